use dercalc_core::tower::{adjoin_decl, parse_tower, GeneratorKind};
use dercalc_core::FieldTower;

use crate::{Out, TowerCmd, Verdict};

fn describe(t: &FieldTower, out: &mut Out) {
    for g in t.generators() {
        match g.kind {
            GeneratorKind::Transcendental => {
                out.emit("generator", &[("name", g.name.clone()), ("kind", "trans".into())], format!("{}: transcendental", g.name))
            }
            GeneratorKind::Algebraic { degree, minpoly } => out.emit(
                "generator",
                &[("name", g.name.clone()), ("kind", "alg".into()), ("degree", degree.to_string()), ("minpoly", minpoly.clone())],
                format!("{}: algebraic of degree {degree}, {minpoly} = 0", g.name),
            ),
        }
    }
}

pub fn run(cmd: TowerCmd, out: &mut Out) -> Verdict {
    match cmd {
        TowerCmd::New { gens } => {
            let mut t = FieldTower::new();
            for g in &gens {
                t = adjoin_decl(&t, g)?;
                out.emit("stage", &[("tower", t.to_string())], t.to_string());
            }
            describe(&t, out);
        }
        TowerCmd::Show { tower } => {
            let t = parse_tower(&tower)?;
            out.emit("tower", &[("tower", t.to_string())], t.to_string());
            describe(&t, out);
        }
    }
    Ok(true)
}
