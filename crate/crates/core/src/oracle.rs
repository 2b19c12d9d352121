//! Independent brute-force models used as test oracles.
//!
//! Nothing here goes through presentations or coset enumeration: the
//! quaternion model multiplies unit quaternions symbolically, the
//! dihedral model composes plane symmetries, and the counting oracle is
//! Gaussian-binomial arithmetic. Production code must not depend on this
//! module; it exists so the test suites have an independent route.

use crate::group::Group;

/// Index of `i` in the quaternion model.
pub const QUAT_I: usize = 2;
/// Index of `j` in the quaternion model.
pub const QUAT_J: usize = 4;

/// The eight unit quaternions {±1, ±i, ±j, ±k}, multiplied symbolically.
/// Indices: 0:+1, 1:-1, 2:+i, 3:-i, 4:+j, 5:-j, 6:+k, 7:-k.
pub fn quaternion_model() -> Group {
    // axis 0 = scalar, 1 = i, 2 = j, 3 = k; element = (sign, axis)
    fn axis_mul(a: usize, b: usize) -> (i32, usize) {
        match (a, b) {
            (0, x) => (1, x),
            (x, 0) => (1, x),
            (x, y) if x == y => (-1, 0),
            (1, 2) => (1, 3),
            (2, 1) => (-1, 3),
            (2, 3) => (1, 1),
            (3, 2) => (-1, 1),
            (3, 1) => (1, 2),
            (1, 3) => (-1, 2),
            _ => unreachable!(),
        }
    }
    let decode = |idx: usize| -> (i32, usize) {
        let sign = if idx % 2 == 0 { 1 } else { -1 };
        (sign, idx / 2)
    };
    let encode = |sign: i32, axis: usize| -> usize { axis * 2 + usize::from(sign < 0) };
    let mut mul = vec![0u16; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (sa, xa) = decode(a);
            let (sb, xb) = decode(b);
            let (s, x) = axis_mul(xa, xb);
            mul[a * 8 + b] = encode(sa * sb * s, x) as u16;
        }
    }
    Group::from_mul_table(
        mul,
        vec![QUAT_I, QUAT_J],
        vec!["i".into(), "j".into()],
        "oracle:Q8",
    )
    .expect("quaternion model is a group")
}

/// Index of the rotation generator in the dihedral model.
pub const DIH_R: usize = 1;
/// Index of the base reflection in the order-8 dihedral model.
pub const DIH_S: usize = 4;

/// Index of the base reflection in `dihedral_model(order)`.
pub fn dihedral_s(order: usize) -> usize {
    order / 2
}

/// Dihedral group of the given (even, >= 4) order as plane symmetries of
/// a regular n-gon: indices 0..n are rotations x -> x + k, indices
/// n..2n are reflections x -> -x + k. Product ab = apply a, then b.
pub fn dihedral_model(order: usize) -> Group {
    assert!(order >= 4 && order % 2 == 0);
    let n = order / 2;
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let (ra, ka) = (a >= n, a % n);
            let (rb, kb) = (b >= n, b % n);
            let v = match (ra, rb) {
                (false, false) => (ka + kb) % n,
                (false, true) => n + (kb + n - ka) % n,
                (true, false) => n + (ka + kb) % n,
                (true, true) => (kb + n - ka) % n,
            };
            mul[a * order + b] = v as u16;
        }
    }
    Group::from_mul_table(
        mul,
        vec![DIH_R, n],
        vec!["r".into(), "s".into()],
        format!("oracle:D{order}"),
    )
    .expect("dihedral model is a group")
}

/// Cyclic group of order n by addition mod n.
pub fn cyclic_table(n: usize) -> Group {
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u16;
        }
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    Group::from_mul_table(mul, gens, vec!["a".into()], format!("oracle:Z{n}"))
        .expect("cyclic table is a group")
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Number of subgroups (= subspaces) of the elementary abelian group
/// (Z_p)^n: the sum of Gaussian binomials over all dimensions.
pub fn elementary_abelian_subgroup_count(n: u32, p: u64) -> u64 {
    (0..=n).map(|k| gaussian_binomial(n, k, p)).sum()
}
