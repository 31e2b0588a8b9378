use qmock_core::poles::PoleSet;
use qmock_core::verify::{registry, Status};

#[test]
fn every_instance_passes_at_low_order() {
    let mut bad = Vec::new();
    for e in registry() {
        for p in &e.instances {
            let order = if e.bivariate { 25 } else { 60 };
            match e.verify(p, order) {
                Ok(r) if r.status == Status::Pass => {}
                Ok(r) => bad.push(format!("{} {:?}: {:?} {:?}", e.name, p, r.first_mismatch, r.message)),
                Err(err) => bad.push(format!("{} {:?}: {err}", e.name, p)),
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn declared_clearing_is_the_pole_lcm() {
    let mut bad = Vec::new();
    for e in registry() {
        for p in &e.instances {
            let id = e.identity(p).unwrap();
            let l = id.lhs.eval(12).unwrap();
            let r = id.rhs.eval(12).unwrap();
            let lcm: PoleSet = l.poles.lcm(&r.poles);
            if lcm != id.clearing {
                bad.push(format!("{} {:?}: declared {} actual {}", e.name, p, id.clearing, lcm));
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
