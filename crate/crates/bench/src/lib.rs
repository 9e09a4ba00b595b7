//! Benchmark inputs.

use projcad::{MultiPoly, VarOrder};

pub struct Problem {
    pub name: &'static str,
    pub order: VarOrder,
    pub polys: Vec<MultiPoly>,
}

fn v(i: usize) -> MultiPoly {
    MultiPoly::var(i)
}

pub fn problems() -> Vec<Problem> {
    let (x, y, z, w) = (v(0), v(1), v(2), v(3));
    let order = |names: &[&str]| VarOrder::new(names.iter().copied()).expect("distinct names");
    let zy = &z * &y - x.pow(2);
    vec![
        Problem {
            name: "circle",
            order: order(&["x", "y"]),
            polys: vec![x.pow(2) + y.pow(2) - MultiPoly::one()],
        },
        Problem {
            name: "zy-x2",
            order: order(&["x", "y", "z"]),
            polys: vec![zy.clone()],
        },
        Problem {
            name: "w-example",
            order: order(&["x", "y", "z", "w"]),
            polys: vec![&zy + &w.pow(2)],
        },
        Problem {
            name: "two-circles",
            order: order(&["x", "y"]),
            polys: vec![
                x.pow(2) + y.pow(2) - MultiPoly::constant(4),
                (&x - &MultiPoly::one()).pow(2) + y.pow(2) - MultiPoly::constant(2),
            ],
        },
    ]
}
