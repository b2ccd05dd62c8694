//! Stride constants `(t_F, a_count, C_F)` under each regime.

use kamhn::field::make_field;
use kamhn::nullcert::{associated_field, stride_constants, Regime, StrideConfig};
use kamhn::poly::{parse_system, UniPoly};

fn main() {
    let sys = parse_system("x1^2 + 1\nx1 - 3").unwrap();
    let k = associated_field(&sys)
        .unwrap_or_else(|| make_field(&UniPoly::from_i64(&[1, 0, 1])).unwrap());
    for regime in [
        Regime::Manual,
        Regime::Grh,
        Regime::Gipit,
        Regime::Unconditional,
    ] {
        let cfg = match regime {
            Regime::Manual => StrideConfig::manual(2, 4, 2),
            r => StrideConfig {
                regime: r,
                af_hint: Some(10.into()),
                ..StrideConfig::default()
            },
        };
        match stride_constants(&sys, Some(&k), &cfg) {
            Ok(sc) => println!(
                "{regime:?}: t_F={} a_count={} C_F={} saturated={}",
                sc.t_f, sc.a_count, sc.c_f, sc.saturated
            ),
            Err(e) => println!("{regime:?}: {e}"),
        }
    }
}
