use std::collections::BTreeMap;

use cophi_core::coalg::Side;
use cophi_core::io::{coalgebra_to_json, comodule_to_json};
use cophi_core::{Coalgebra, Comodule, Field};
use serde_json::Value;

/// Input files for a named demo, as (file name, contents).
pub fn files(which: &str) -> Result<Vec<(String, Value)>, String> {
    let f = Field::new(Field::DEFAULT_PRIME as u64).expect("prime");
    let mut out = Vec::new();
    match which {
        "paper-right" => {
            let c = Coalgebra::a_infinity_away_from_zero(20, 1).map_err(|e| e.to_string())?;
            out.push(("ainf_right.json".into(), coalgebra_to_json(&c)));
            for n in 0..=15 {
                let m =
                    Comodule::simple(c.clone(), Side::Right, f, n).map_err(|e| e.to_string())?;
                out.push((format!("m{n}.json"), comodule_to_json(&m)));
            }
        }
        "paper-left" => {
            let c = Coalgebra::a_infinity_toward_zero(20, 1).map_err(|e| e.to_string())?;
            out.push(("ainf_left.json".into(), coalgebra_to_json(&c)));
            for (name, dims) in [
                ("semisimple_0_3_7.json", vec![(0, 1), (3, 1), (7, 1)]),
                ("semisimple_1x2_4.json", vec![(1, 2), (4, 1)]),
                ("s0.json", vec![(0, 1)]),
            ] {
                let dims: BTreeMap<usize, usize> = dims.into_iter().collect();
                let m = Comodule::semisimple(c.clone(), Side::Left, f, &dims)
                    .map_err(|e| e.to_string())?;
                out.push((name.into(), comodule_to_json(&m)));
            }
            let e = Comodule::injective_indecomposable(c, Side::Left, f, 2)
                .map_err(|e| e.to_string())?;
            out.push(("injective_2.json".into(), comodule_to_json(&e)));
        }
        _ => {
            let n: usize = which
                .strip_prefix("cycle")
                .and_then(|s| s.parse().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| {
                    format!("unknown example `{which}`; expected paper-left, paper-right or cycleN")
                })?;
            let c = Coalgebra::cycle(n, 1).map_err(|e| e.to_string())?;
            out.push((format!("cycle{n}.json"), coalgebra_to_json(&c)));
            let s = Comodule::simple(c.clone(), Side::Right, f, 0).map_err(|e| e.to_string())?;
            out.push(("s0.json".into(), comodule_to_json(&s)));
            let e = Comodule::injective_indecomposable(c, Side::Right, f, 0)
                .map_err(|e| e.to_string())?;
            out.push(("e0.json".into(), comodule_to_json(&e)));
        }
    }
    Ok(out)
}
