use mab_loops::cayley::{embed_m10, CayleyAlgebra, Zorn};
use mab_loops::loops::{associator, is_associative, nucleus, FiniteLoop, Magma};
use mab_loops::mab::{MabLoop, MabParams};
use mab_loops::ring::{Elem, Ring, RingSpec};
use mab_loops::strategy::{sweep, CheckStrategy};
use mab_loops::triality::{SWord, TElem, TrialityGroup};
use proptest::prelude::*;

const RINGS: [&str; 8] = [
    "Zn:9", "Zn:12", "GF:7", "GF:2^2", "GF:2^3", "GF:3^2", "GF:5^2", "GF:2^11",
];

fn mab(ring: &str, order: u64, a: i64, b: i64) -> MabLoop {
    MabLoop::new(MabParams::with_r0_order(ring, order, a, b).unwrap()).unwrap()
}

/// Schoolbook product of base-p digit vectors reduced by the monic
/// polynomial, written independently of the library.
fn naive_gf_mul(p: u32, poly: &[u32], a: u32, b: u32) -> u32 {
    let k = poly.len() - 1;
    let digits = |mut x: u32| {
        let mut d = vec![0u64; k];
        for slot in d.iter_mut() {
            *slot = u64::from(x % p);
            x /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let p64 = u64::from(p);
    let mut prod = vec![0u64; 2 * k];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p64;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        for (i, &pc) in poly.iter().enumerate().take(k) {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + p64 * p64 - c * u64::from(pc)) % p64;
        }
        prod[deg] = 0;
    }
    prod[..k].iter().rev().fold(0u64, |acc, &d| acc * p64 + d) as u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(ri in 0..RINGS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let r = Ring::parse(RINGS[ri]).unwrap();
        let n = r.size();
        let (a, b, c) = (Elem(a % n), Elem(b % n), Elem(c % n));
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), Elem::ZERO);
        if let Some(ai) = r.inverse(a) {
            prop_assert_eq!(r.mul(a, ai), Elem::ONE);
        }
        prop_assert_eq!(r.element(u64::from(a.0)).unwrap(), a);
    }

    #[test]
    fn extension_field_matches_schoolbook(ri in 3..RINGS.len(), a in any::<u32>(), b in any::<u32>()) {
        let r = Ring::parse(RINGS[ri]).unwrap();
        let RingSpec::Gf { p, poly } = r.spec().clone() else { unreachable!() };
        let n = r.size();
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(r.mul(Elem(a), Elem(b)).0, naive_gf_mul(p, &poly, a, b));
    }

    #[test]
    fn loop_laws_on_sampled_triples(inst in 0..3usize, i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let l = [mab("GF:7", 3, 1, -2), mab("GF:2^3", 7, 1, 0), mab("GF:5^2", 3, 2, 0)][inst].clone();
        let n = l.order();
        let (p, q, r) = (l.elem(i % n), l.elem(j % n), l.elem(k % n));
        let e = l.identity_elem();
        prop_assert_eq!(l.mul(&e, &q), q);
        prop_assert_eq!(l.mul(&q, &e), q);
        prop_assert_eq!(l.mul(&p, &l.inv(&p)), e);
        prop_assert_eq!(l.mul(&l.inv(&p), &p), e);
        // x y . z x = (x . y z) x
        prop_assert_eq!(
            l.mul(&l.mul(&p, &q), &l.mul(&r, &p)),
            l.mul(&l.mul(&p, &l.mul(&q, &r)), &p)
        );
        let associates = l.mul(&l.mul(&p, &q), &r) == l.mul(&p, &l.mul(&q, &r));
        prop_assert_eq!(l.associator_det(&p, &q, &r) == Elem::ZERO, associates);
    }

    #[test]
    fn triality_route_agrees(inst in 0..2usize, i in any::<usize>(), j in any::<usize>()) {
        let l = [mab("GF:7", 3, 1, -2), mab("GF:2^3", 7, 1, 0)][inst].clone();
        let g = TrialityGroup::new(l.params().clone()).unwrap();
        let n = l.order();
        let (p, q) = (l.elem(i % n), l.elem(j % n));
        prop_assert_eq!(g.loop_mul(&p, &q).unwrap(), l.mul(&p, &q));
        prop_assert_eq!(g.loop_inv(&p).unwrap(), l.inv(&p));
        prop_assert_eq!(g.decode(&g.encode(&p)).unwrap(), p);
    }

    #[test]
    fn s3_acts_by_automorphisms(i in any::<usize>(), j in any::<usize>()) {
        let g = TrialityGroup::new(MabParams::from_parts("GF:7", 2, 1, -2).unwrap()).unwrap();
        let n = g.order();
        let (x, y) = (g.elem(i % n), g.elem(j % n));
        for rel in ["ss", "rrr", "rsrs"] {
            prop_assert_eq!(g.act_g(SWord::from_letters(rel).unwrap(), &x), x);
        }
        for w in SWord::ALL {
            prop_assert_eq!(g.act_g(w, &g.g_mul(&x, &y)), g.g_mul(&g.act_g(w, &x), &g.act_g(w, &y)));
            for v in SWord::ALL {
                prop_assert_eq!(g.act_g(w.then(v), &x), g.act_g(v, &g.act_g(w, &x)));
            }
        }
        let m = g.m_of(&x);
        prop_assert_eq!(m.t.r2, Elem::ONE);
        prop_assert_eq!(g.act_g(SWord::SIGMA, &m), g.g_inv(&m));
        let id = g.g_mul(&g.g_mul(&m, &g.act_g(SWord::RHO, &m)), &g.act_g(SWord::RHO2, &m));
        prop_assert_eq!(id, mab_loops::triality::GElem::IDENTITY);
        prop_assert_eq!(g.g_mul(&g.g_mul(&x, &y), &g.g_inv(&y)), x);
    }

    #[test]
    fn pairing_is_equivariant(v in prop::array::uniform3(0u32..4), w in prop::array::uniform3(0u32..4), ti in 0..9usize) {
        let g = TrialityGroup::new(MabParams::from_parts("GF:2^2", 2, 1, 0).unwrap()).unwrap();
        let (v, w) = (v.map(Elem), w.map(Elem));
        let t: TElem = g.t_elements()[ti];
        prop_assert_eq!(g.pairing(&g.act_v(&v, t), &g.act_v(&w, t)), g.act_dual(&g.pairing(&v, &w), t));
        for s in SWord::ALL {
            prop_assert_eq!(g.pairing(&g.act_v_word(&v, s), &g.act_v_word(&w, s)), g.act_v_word(&g.pairing(&v, &w), s));
        }
    }

    #[test]
    fn zorn_algebra_laws(a in prop::array::uniform8(0u32..7), b in prop::array::uniform8(0u32..7), c in prop::array::uniform8(0u32..7), s in 0u32..7) {
        let o = CayleyAlgebra::new(Ring::parse("GF:7").unwrap());
        let z = |x: [u32; 8]| Zorn::new(Elem(x[0]), [Elem(x[1]), Elem(x[2]), Elem(x[3])], [Elem(x[4]), Elem(x[5]), Elem(x[6])], Elem(x[7]));
        let (a, b, c) = (z(a), z(b), z(c));
        let s = Elem(s);
        prop_assert_eq!(o.mul(&o.add(&a, &b), &c), o.add(&o.mul(&a, &c), &o.mul(&b, &c)));
        prop_assert_eq!(o.mul(&a, &o.add(&b, &c)), o.add(&o.mul(&a, &b), &o.mul(&a, &c)));
        prop_assert_eq!(o.mul(&o.scale(s, &a), &b), o.scale(s, &o.mul(&a, &b)));
        prop_assert_eq!(o.mul(&a, &o.conj(&a)), o.scale(o.norm(&a), &Zorn::ONE));
        let aa = o.mul(&a, &a);
        prop_assert_eq!(o.mul(&aa, &b), o.mul(&a, &o.mul(&a, &b)));
        prop_assert_eq!(o.mul(&o.mul(&b, &a), &a), o.mul(&b, &aa));
        prop_assert_eq!(o.norm(&o.mul(&a, &b)), o.ring().mul(o.norm(&a), o.norm(&b)));
    }

    #[test]
    fn embedding_is_multiplicative(i in 0..3584usize, j in 0..3584usize) {
        let l = mab("GF:2^3", 7, 1, 0);
        let o = CayleyAlgebra::new(l.ring().clone());
        let (p, q) = (l.elem(i), l.elem(j));
        prop_assert_eq!(o.mul(&embed_m10(&p), &embed_m10(&q)), embed_m10(&l.mul(&p, &q)));
        prop_assert_eq!(o.norm(&embed_m10(&p)), p.r);
    }

    #[test]
    fn random_sweeps_are_reproducible(seed in any::<u64>()) {
        let s = CheckStrategy::random(50, seed);
        let record = || {
            let seen = std::sync::Mutex::new(Vec::new());
            sweep::<3, _>(1000, s, |t| {
                seen.lock().unwrap().push(t);
                true
            });
            seen.into_inner().unwrap()
        };
        let first = record();
        prop_assert_eq!(first.len(), 50);
        prop_assert_eq!(first, record());
    }
}

#[test]
fn nucleus_is_an_associative_subloop() {
    let l = mab("GF:2^2", 3, 1, 0);
    let nuc = nucleus(&l);
    for &a in &nuc {
        assert!(nuc.contains(&FiniteLoop::inv(&l, a).unwrap()));
        for &b in &nuc {
            assert!(nuc.contains(&Magma::mul(&l, a, b)));
            for &c in &nuc {
                assert_eq!(associator(&l, a, b, c), Some(FiniteLoop::identity(&l)));
            }
        }
    }
}

#[test]
fn some_loops_are_nonassociative() {
    assert!(is_associative(&mab("GF:3", 2, 1, 0)).is_some());
    assert!(is_associative(&mab("GF:2^2", 3, 1, 0)).is_some());
}

#[test]
fn abelian_by_cyclic_form_agrees_exhaustively() {
    let l = mab("GF:2^2", 3, 1, -2);
    for p in l.elements() {
        for q in l.elements() {
            assert_eq!(l.mul_abelian_by_cyclic(&p, &q).unwrap(), l.mul(&p, &q));
        }
    }
}

#[test]
fn zorn_conjugate_exhaustive_gf2() {
    let o = CayleyAlgebra::new(Ring::parse("GF:2").unwrap());
    for i in 0..256 {
        let a = o.elem(i);
        assert_eq!(o.mul(&o.conj(&a), &a), o.scale(o.norm(&a), &Zorn::ONE));
    }
}

#[test]
fn embedded_image_is_closed() {
    let l = mab("GF:2^2", 3, 1, 0);
    let o = CayleyAlgebra::new(l.ring().clone());
    let image: std::collections::HashSet<Zorn> = l.elements().map(|p| embed_m10(&p)).collect();
    for x in &image {
        assert!(image.contains(&o.inverse(x).unwrap()));
        for y in &image {
            assert!(image.contains(&o.mul(x, y)));
        }
    }
}
