use hopfore::check::Status;
use hopfore::frontend::{builtin, parse, serialize, BUILTIN_NAMES};
use hopfore::hopf::{check_hoe_conditions, check_hopf_axioms};
use hopfore::ore::validate_tower;

#[test]
fn every_builtin_passes_every_check() {
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        let mut report = validate_tower(ht.tower());
        report.extend(check_hopf_axioms(&ht));
        for i in 1..ht.arity() {
            report.extend(check_hoe_conditions(&ht, i).unwrap());
        }
        for c in &report.checks {
            assert_eq!(
                c.status,
                Status::Pass,
                "{name}: {} {:?} {}",
                c.name,
                c.witness,
                c.detail
            );
        }
    }
}

#[test]
fn serialization_round_trips() {
    for name in BUILTIN_NAMES {
        let ht = builtin(name).unwrap();
        let text = serialize(&ht);
        assert_eq!(text, serialize(&ht));
        let back = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(back, ht, "{name}");
    }
}
