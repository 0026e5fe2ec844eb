use num_traits::Zero;

use crate::hopf::HopfTower;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Canonical `.hopf` text. Parameters are inlined, identity `sigma` entries
/// and zero `delta` entries are omitted.
pub fn serialize(ht: &HopfTower) -> String {
    let t = ht.tower();
    let names = ht.names();
    let mut out = format!("algebra {}\n", quote(ht.name()));
    for i in 0..ht.arity() {
        let step = t.step(i);
        let entries = |images: &[crate::ore::NcPoly], skip: &dyn Fn(usize) -> bool| -> Vec<String> {
            images
                .iter()
                .enumerate()
                .filter(|(a, _)| !skip(*a))
                .map(|(a, p)| format!("{} -> {}", names[a], p.render(names)))
                .collect()
        };
        let mut clauses = Vec::new();
        if !step.sigma_is_identity() || step.sigma_inv.iter().enumerate().any(|(a, p)| *p != t.generator(a)) {
            clauses.push(format!("sigma: {}", entries(&step.sigma, &|_| false).join("; ")));
            clauses.push(format!(
                "sigma_inv: {}",
                entries(&step.sigma_inv, &|_| false).join("; ")
            ));
        }
        let delta = entries(&step.delta, &|a| step.delta[a].is_zero());
        if !delta.is_empty() {
            clauses.push(format!("delta: {}", delta.join("; ")));
        }
        if !ht.tail(i).is_zero() {
            clauses.push(format!("w: {}", ht.tail(i).render(names)));
        }
        if !ht.counits()[i].is_zero() {
            clauses.push(format!("counit: {}", ht.counits()[i]));
        }
        if clauses.is_empty() {
            out.push_str(&format!("gen {}\n", names[i]));
        } else {
            out.push_str(&format!("gen {} {{\n", names[i]));
            for c in clauses {
                out.push_str(&format!("  {c}\n"));
            }
            out.push_str("}\n");
        }
    }
    out
}
