use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteLoop, LoopError, Magma, TableLoop, TableMagma};

pub fn associates<M: Magma + ?Sized>(m: &M, x: usize, y: usize, z: usize) -> bool {
    m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z))
}

/// The unique `w` with `(xy)z = (x(yz)) w`.
pub fn associator<L: FiniteLoop + ?Sized>(l: &L, x: usize, y: usize, z: usize) -> Option<usize> {
    l.left_div(l.mul(x, l.mul(y, z)), l.mul(l.mul(x, y), z))
}

/// First non-associating triple in lexicographic order, if any.
pub fn is_associative<M: Magma + ?Sized>(m: &M) -> Option<[usize; 3]> {
    let n = m.order();
    (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| (0..n).find(|&z| !associates(m, x, y, z)).map(|z| [x, y, z]))
    })
}

/// First non-commuting pair among `elems` (all elements if `None`).
pub fn is_commutative<M: Magma + ?Sized>(m: &M, elems: Option<&[usize]>) -> Option<[usize; 2]> {
    let all: Vec<usize>;
    let elems = match elems {
        Some(e) => e,
        None => {
            all = (0..m.order()).collect();
            &all
        }
    };
    elems.par_iter().enumerate().find_map_first(|(i, &a)| {
        elems[i + 1..]
            .iter()
            .find(|&&b| m.mul(a, b) != m.mul(b, a))
            .map(|&b| [a, b])
    })
}

/// True if the loop is associative and generated by a single element.
pub fn is_cyclic_group<L: FiniteLoop + ?Sized>(l: &L) -> bool {
    if is_associative(l).is_some() {
        return false;
    }
    let n = l.order();
    let e = l.identity();
    (0..n).any(|g| {
        let mut x = g;
        let mut k = 1;
        while x != e {
            x = l.mul(x, g);
            k += 1;
            if k > n {
                return false;
            }
        }
        k == n
    })
}

/// Elements associating with every pair in all three positions.
pub fn nucleus<M: Magma + ?Sized>(m: &M) -> Vec<usize> {
    let n = m.order();
    (0..n)
        .into_par_iter()
        .filter(|&a| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    associates(m, a, x, y) && associates(m, x, a, y) && associates(m, x, y, a)
                })
            })
        })
        .collect()
}

/// The principal isotope with `x * y = (x m^-1)(m y)`. Its identity is
/// located by search.
pub fn isotope<L: FiniteLoop + ?Sized>(l: &L, m: usize) -> Result<TableLoop, LoopError> {
    let n = l.order();
    if m >= n {
        return Err(LoopError::OutOfRange(m));
    }
    let mi = l.inv(m).ok_or(LoopError::NoInverse { element: m })?;
    let right: Vec<usize> = (0..n).map(|x| l.mul(x, mi)).collect();
    let left: Vec<usize> = (0..n).map(|y| l.mul(m, y)).collect();
    let table: Vec<u32> = (0..n * n)
        .into_par_iter()
        .map(|i| l.mul(right[i / n], left[i % n]) as u32)
        .collect();
    let magma = TableMagma::new(table)?.with_labels((0..n).map(|a| l.label(a)).collect());
    TableLoop::new(magma)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalWitness {
    /// `xN` is not a block of a partition, or `xN != Nx`.
    Coset { x: usize },
    /// `x(yN) != (xy)N`.
    LeftAssoc { x: usize, y: usize },
    /// `(Nx)y != N(xy)`.
    RightAssoc { x: usize, y: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalReport {
    pub normal: bool,
    pub witness: Option<NormalWitness>,
    /// Smallest element of each coset, in coset order.
    pub coset_representatives: Vec<usize>,
    #[serde(skip)]
    pub quotient: Option<TableLoop>,
}

/// Normality of a subloop `N` (sweeps every `x, y`), and the quotient loop
/// on cosets when normal.
pub fn normal_structure<L: FiniteLoop + ?Sized>(
    l: &L,
    subset: &[usize],
) -> Result<NormalReport, LoopError> {
    let n = l.order();
    let mut in_n = vec![false; n];
    for &a in subset {
        if a >= n {
            return Err(LoopError::OutOfRange(a));
        }
        in_n[a] = true;
    }
    let members: Vec<usize> = (0..n).filter(|&a| in_n[a]).collect();
    let e = l.identity();
    if !in_n[e] {
        return Err(LoopError::NotSubloop("missing identity".into()));
    }
    for &a in &members {
        for &b in &members {
            if !in_n[l.mul(a, b)] {
                return Err(LoopError::NotSubloop(format!(
                    "{} * {} leaves the subset",
                    l.label(a),
                    l.label(b)
                )));
            }
        }
        match l.inv(a) {
            Some(ai) if in_n[ai] => {}
            _ => {
                return Err(LoopError::NotSubloop(format!(
                    "inverse of {} not in subset",
                    l.label(a)
                )))
            }
        }
    }

    let not_normal = |w| NormalReport {
        normal: false,
        witness: Some(w),
        coset_representatives: Vec::new(),
        quotient: None,
    };

    // left cosets must partition the carrier and agree with right cosets
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &a in &members {
                let y = l.mul(x, a);
                if coset[y] != usize::MAX {
                    return Ok(not_normal(NormalWitness::Coset { x }));
                }
                coset[y] = id;
            }
        }
    }
    let coset_bad = (0..n).into_par_iter().find_first(|&x| {
        members
            .iter()
            .any(|&a| coset[l.mul(x, a)] != coset[x] || coset[l.mul(a, x)] != coset[x])
    });
    if let Some(x) = coset_bad {
        return Ok(not_normal(NormalWitness::Coset { x }));
    }
    let assoc_bad = (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| {
            let target = coset[l.mul(x, y)];
            if members
                .iter()
                .any(|&a| coset[l.mul(x, l.mul(y, a))] != target)
            {
                Some(NormalWitness::LeftAssoc { x, y })
            } else if members
                .iter()
                .any(|&a| coset[l.mul(l.mul(a, x), y)] != target)
            {
                Some(NormalWitness::RightAssoc { x, y })
            } else {
                None
            }
        })
    });
    if let Some(w) = assoc_bad {
        return Ok(not_normal(w));
    }

    let k = reps.len();
    let mut table = vec![u32::MAX; k * k];
    for x in 0..n {
        for y in 0..n {
            let slot = &mut table[coset[x] * k + coset[y]];
            let prod = coset[l.mul(x, y)] as u32;
            if *slot == u32::MAX {
                *slot = prod;
            } else if *slot != prod {
                return Err(LoopError::IllDefinedQuotient(x, y));
            }
        }
    }
    let labels = reps.iter().map(|&r| format!("{}N", l.label(r))).collect();
    let quotient = TableLoop::new(TableMagma::new(table)?.with_labels(labels))?;
    Ok(NormalReport {
        normal: true,
        witness: None,
        coset_representatives: reps,
        quotient: Some(quotient),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{verify_loop_axioms, verify_moufang};
    use crate::strategy::CheckStrategy;

    /// S_3 as permutations of {0,1,2}, composed left to right.
    fn s3() -> TableLoop {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap() as u32;
        let rows: Vec<Vec<u32>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| idx([q[p[0]], q[p[1]], q[p[2]]]))
                    .collect()
            })
            .collect();
        TableLoop::from_rows(&rows).unwrap()
    }

    fn broken_five() -> TableLoop {
        TableLoop::from_rows(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap()
    }

    #[test]
    fn group_associator_is_trivial() {
        let g = s3();
        assert!(is_associative(&g).is_none());
        for x in 0..6 {
            for y in 0..6 {
                for z in 0..6 {
                    assert_eq!(associator(&g, x, y, z), Some(0));
                }
            }
        }
        assert_eq!(nucleus(&g).len(), 6);
        assert!(is_commutative(&g, None).is_some());
    }

    #[test]
    fn associator_matches_associativity_sweep() {
        let l = broken_five();
        let e = l.identity();
        let mut any_nontrivial = false;
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    let w = associator(&l, x, y, z).unwrap();
                    assert_eq!(w == e, associates(&l, x, y, z));
                    any_nontrivial |= w != e;
                }
            }
        }
        assert!(any_nontrivial);
        assert!(is_associative(&l).is_some());
        assert_eq!(associator(&l, e, 3, 4), Some(e));
    }

    #[test]
    fn isotope_of_group_at_identity_and_elsewhere() {
        let g = s3();
        let same = isotope(&g, 0).unwrap();
        assert_eq!(same.table(), TableLoop::from_loop(&g).table());
        for m in 0..6 {
            let iso = isotope(&g, m).unwrap();
            assert!(verify_loop_axioms(&iso).ok);
            assert!(is_associative(&iso).is_none());
            assert!(verify_moufang(&iso, CheckStrategy::Exhaustive).ok);
        }
    }

    #[test]
    fn normal_subgroups_of_s3() {
        let g = s3();
        // A_3 = {id, 3-cycles}
        let a3 = normal_structure(&g, &[0, 4, 5]).unwrap();
        assert!(a3.normal);
        let q = a3.quotient.unwrap();
        assert_eq!(q.order(), 2);
        assert!(is_cyclic_group(&q));
        // a transposition subgroup is not normal
        let t = normal_structure(&g, &[0, 1]).unwrap();
        assert!(!t.normal);
        // trivial cases
        let whole = normal_structure(&g, &(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(whole.quotient.unwrap().order(), 1);
        let triv = normal_structure(&g, &[0]).unwrap();
        assert_eq!(
            triv.quotient.unwrap().table(),
            TableLoop::from_loop(&g).table()
        );
        assert!(matches!(
            normal_structure(&g, &[0, 4]),
            Err(LoopError::NotSubloop(_))
        ));
    }
}
