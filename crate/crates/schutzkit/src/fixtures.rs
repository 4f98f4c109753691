//! Small, hand-checked monoids shared across unit tests.

use crate::dmonoid::DMonoid;
use crate::object::FiniteObject;

/// The trivial one-element SET monoid.
pub(crate) fn trivial_set() -> DMonoid {
    DMonoid::new(FiniteObject::set(1), 0, vec![0], "1", vec!["1".into()])
}

/// The two-element group in SET.
pub(crate) fn z2_set() -> DMonoid {
    DMonoid::new(
        FiniteObject::set(2),
        0,
        vec![0, 1, 1, 0],
        "Z2",
        vec!["e".into(), "g".into()],
    )
}

/// The syntactic monoid of `a·Σ*` (and of `Σ*·a`): `{1, 0}` with `x·y = y`
/// unless `y = 1`. Element 1 is the unit, element 0 absorbs on the right.
pub(crate) fn b2_set() -> DMonoid {
    DMonoid::new(
        FiniteObject::set(2),
        0,
        vec![0, 1, 1, 1],
        "B2",
        vec!["1".into(), "0".into()],
    )
}

/// The flip-flop monoid `{1, s, r}` with `x·y = y` for `y ≠ 1`.
pub(crate) fn flip_flop() -> DMonoid {
    DMonoid::new(
        FiniteObject::set(3),
        0,
        vec![0, 1, 2, 1, 1, 2, 2, 1, 2],
        "U1",
        vec!["1".into(), "s".into(), "r".into()],
    )
}

/// The 2-chain `0 < 1` in POS with multiplication `min` and unit 1.
pub(crate) fn min_chain2_pos() -> DMonoid {
    let object = FiniteObject::pos(2, &[(0, 1)]).unwrap();
    DMonoid::new(
        object,
        1,
        vec![0, 0, 0, 1],
        "C2",
        vec!["0".into(), "1".into()],
    )
}

/// The Boolean semilattice in JSL with multiplication ∧ and unit 1.
pub(crate) fn bool_jsl() -> DMonoid {
    let object = FiniteObject::jsl(2, vec![0, 1, 1, 1]).unwrap();
    DMonoid::new(
        object,
        1,
        vec![0, 0, 0, 1],
        "B",
        vec!["0".into(), "1".into()],
    )
}

/// The 3-chain `0 < 1 < 2` in JSL with join = max, multiplication = min,
/// unit = top.
pub(crate) fn chain3_jsl() -> DMonoid {
    let join: Vec<usize> = (0..3)
        .flat_map(|x| (0..3).map(move |y: usize| x.max(y)))
        .collect();
    let mult: Vec<usize> = (0..3)
        .flat_map(|x: usize| (0..3).map(move |y: usize| x.min(y)))
        .collect();
    let object = FiniteObject::jsl(3, join).unwrap();
    DMonoid::new(
        object,
        2,
        mult,
        "C3",
        vec!["0".into(), "1".into(), "2".into()],
    )
}

/// Join-semilattice 2×2 grid (`0 < a,b < 1`, `a ∨ b = 1`) with
/// multiplication ∧ and unit ⊤; ∧ distributes over ∨ here.
pub(crate) fn grid_meet_jsl() -> DMonoid {
    #[rustfmt::skip]
    let join = vec![
        0, 1, 2, 3,
        1, 1, 3, 3,
        2, 3, 2, 3,
        3, 3, 3, 3,
    ];
    #[rustfmt::skip]
    let meet = vec![
        0, 0, 0, 0,
        0, 1, 0, 1,
        0, 0, 2, 2,
        0, 1, 2, 3,
    ];
    let object = FiniteObject::jsl(4, join).unwrap();
    DMonoid::new(
        object,
        3,
        meet,
        "G",
        vec!["0".into(), "a".into(), "b".into(), "1".into()],
    )
}

/// The one-dimensional algebra GF(2) itself: carrier `{0, 1}`, unit 1.
pub(crate) fn gf2_1d_vect() -> DMonoid {
    let object = FiniteObject::vect(2, 1).unwrap();
    DMonoid::new(
        object,
        1,
        vec![0, 0, 0, 1],
        "GF2",
        vec!["0".into(), "1".into()],
    )
}

/// The monoid algebra GF(2)[Z2]: dim 2 with basis e, g and bilinear
/// multiplication extending the group law (e² = g² = e, eg = ge = g).
pub(crate) fn gf2_z2_vect() -> DMonoid {
    let object = FiniteObject::vect(2, 2).unwrap();
    let mut mult = vec![0usize; 16];
    for x in 0..4usize {
        for y in 0..4usize {
            let (x0, x1) = (x & 1, x >> 1);
            let (y0, y1) = (y & 1, y >> 1);
            let ce = (x0 * y0 + x1 * y1) & 1;
            let cg = (x0 * y1 + x1 * y0) & 1;
            mult[x * 4 + y] = ce + 2 * cg;
        }
    }
    DMonoid::new(
        object,
        1,
        mult,
        "GF2[Z2]",
        (0..4).map(|i| format!("v{i}")).collect(),
    )
}
