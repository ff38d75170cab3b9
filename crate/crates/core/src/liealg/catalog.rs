//! Named structure-constant tables. Semidirect and direct sums list the
//! rotation (or first-summand) generators first.

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{rat, Rational};

type Table = Vec<(usize, usize, Vec<(usize, Rational)>)>;

fn build(name: &str, dim: usize, table: Table) -> LieAlgebra {
    LieAlgebra::from_brackets(Some(name.to_string()), dim, table)
        .expect("catalog table is well formed")
}

fn so3_table(offset: usize) -> Table {
    let o = offset;
    vec![
        (o, o + 1, vec![(o + 2, rat(1))]),
        (o, o + 2, vec![(o + 1, rat(-1))]),
        (o + 1, o + 2, vec![(o, rat(1))]),
    ]
}

pub fn abelian(n: usize) -> LieAlgebra {
    build(&format!("abelian{n}"), n, Vec::new())
}

pub fn heisenberg() -> LieAlgebra {
    build("heisenberg", 3, vec![(0, 1, vec![(2, rat(1))])])
}

pub fn aff1() -> LieAlgebra {
    build("aff1", 2, vec![(0, 1, vec![(1, rat(1))])])
}

pub fn so3() -> LieAlgebra {
    build("so3", 3, so3_table(0))
}

/// Basis `h, e, f`.
pub fn sl2() -> LieAlgebra {
    build(
        "sl2",
        3,
        vec![
            (0, 1, vec![(1, rat(2))]),
            (0, 2, vec![(2, rat(-2))]),
            (1, 2, vec![(0, rat(1))]),
        ],
    )
}

/// `so(3) ⋉ R³`: rotations `e_1..e_3`, translations `f_1..f_3`.
pub fn e3() -> LieAlgebra {
    let mut t = so3_table(0);
    // [e_i, f_j] = ε_ijk f_k
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            let sign = if (i + 1) % 3 == j { 1 } else { -1 };
            t.push((i, 3 + j, vec![(3 + k, rat(sign))]));
        }
    }
    build("e3", 6, t)
}

pub fn so4() -> LieAlgebra {
    let mut t = so3_table(0);
    t.extend(so3_table(3));
    build("so4", 6, t)
}

pub fn aff1_abelian(k: usize) -> LieAlgebra {
    build(
        &format!("aff1+abelian{k}"),
        2 + k,
        vec![(0, 1, vec![(1, rat(1))])],
    )
}

/// Every catalog entry under its name.
pub fn catalog() -> Vec<LieAlgebra> {
    vec![
        abelian(1),
        abelian(2),
        abelian(3),
        abelian(4),
        heisenberg(),
        aff1(),
        so3(),
        sl2(),
        e3(),
        so4(),
        aff1_abelian(1),
        aff1_abelian(2),
    ]
}

pub fn catalog_names() -> Vec<String> {
    catalog().into_iter().filter_map(|g| g.name).collect()
}

/// Looks up a name; `abelianN` and `aff1+abelianK` accept any size.
pub fn by_name(name: &str) -> Result<LieAlgebra> {
    if let Some(g) = catalog()
        .into_iter()
        .find(|g| g.name.as_deref() == Some(name))
    {
        return Ok(g);
    }
    let size = |s: &str| s.parse::<usize>().ok().filter(|n| (1..=64).contains(n));
    if let Some(n) = name.strip_prefix("aff1+abelian").and_then(size) {
        return Ok(aff1_abelian(n));
    }
    if let Some(n) = name.strip_prefix("abelian").and_then(size) {
        return Ok(abelian(n));
    }
    Err(Error::UnknownName(name.to_string()))
}
