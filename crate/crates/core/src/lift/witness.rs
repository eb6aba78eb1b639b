//! Adjacency by crossing parity at intersection witnesses. Slow and kept
//! separate from the piece machinery so the two can be compared.

use num_traits::{One, Zero};

use crate::geometry::{
    atom_witness, atoms, param_along, crossing_parity_polyline, st_interval, Atom, GeometricObject, Point,
    Polyline, Rational, Segment,
};

use super::{canonical_point, LiftedInstance, LiftedVertex, Sheet};

fn lower(p: &Point, s: &Point, t: &Point) -> bool {
    t.sub(s).cross(&p.sub(s)) <= Rational::zero()
}

fn on_cut(p: &Point, s: &Point, t: &Point) -> bool {
    if !t.sub(s).cross(&p.sub(s)).is_zero() {
        return false;
    }
    let lam = param_along(p, s, t);
    lam > Rational::zero() && lam < Rational::one()
}

fn parity(path: Vec<Point>, barrier: &Segment) -> u8 {
    crossing_parity_polyline(&Polyline { vertices: path }, barrier).expect("general position")
}

/// Sheet of `w` on the `+1` copy of `o`, where `w` lies on atom `a`.
fn sheet_at(o: &GeometricObject, a: &Atom<'_>, w: &Point, s: &Point, t: &Point) -> Sheet {
    let barrier = Segment::new(s.clone(), t.clone());
    let odd = match a {
        Atom::Disk(_) | Atom::Region(_) => {
            // straight path from the canonical point stays inside
            let meets = matches!(st_interval(o, s, t), Ok(Some(_)));
            meets && lower(w, s, t) != lower(&canonical_point(o), s, t)
        }
        Atom::Edge(i, seg) => {
            let chain = o.chain().expect("curve object");
            let mut k = 0u8;
            for j in 0..*i {
                k ^= parity(vec![chain[j].clone(), chain[j + 1].clone()], &barrier);
            }
            if *w != seg.a {
                if on_cut(w, s, t) {
                    // on the cut: reached from above means we already crossed
                    k ^= u8::from(!lower(&seg.a, s, t));
                } else {
                    k ^= parity(vec![seg.a.clone(), w.clone()], &barrier);
                }
            }
            k == 1
        }
    };
    if odd {
        Sheet::Minus
    } else {
        Sheet::Plus
    }
}

/// Adjacency of `u` and `v` decided from one witness point per pair of
/// convex building blocks.
pub fn witness_adjacent(li: &LiftedInstance, u: LiftedVertex, v: LiftedVertex) -> bool {
    if u.object == v.object {
        return false;
    }
    let inst = li.instance();
    let (ou, ov) = (li.object(u.object), li.object(v.object));
    let (au, av) = (atoms(ou), atoms(ov));
    for x in &au {
        for y in &av {
            if let Some(w) = atom_witness(x, y) {
                let su = u.sheet * sheet_at(ou, x, &w, &inst.s, &inst.t);
                let sv = v.sheet * sheet_at(ov, y, &w, &inst.s, &inst.t);
                if su == sv {
                    return true;
                }
            }
        }
    }
    false
}
