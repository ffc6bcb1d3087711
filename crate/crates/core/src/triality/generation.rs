//! Evidence that `S` acts on `G` without fixed quotients: sigma moves some
//! dual vector and some torus element, and the elements `g^-1 g^alpha`
//! generate a subgroup that maps onto `T` and contains `W`.
//!
//! Generation is decided with two rounds of Schreier generators. The torus
//! is small, so a transversal of `<K> / (<K> n W)` is found by search. `W`
//! is a central extension of `V + V` by `V*`, so the second round only
//! needs the additive span of the `V + V` images plus one more Schreier
//! pass into `V*`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{fmt_vec, GElem, SWord, TElem, TrialityGroup, Vec3};
use crate::loops::Magma;
use crate::ring::Elem;
use crate::strategy::Sampler;

/// Largest `|V + V|` for which the span search is attempted.
pub const SPAN_LIMIT: u64 = 1 << 20;
const RANDOM_GENERATORS: usize = 8;
const GENERATION_SEED: u64 = 0x8e4e_5a7e;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorusWitness {
    /// `t` with `t^sigma != t`.
    Moved { t: String, image: String },
    /// `T` is trivial.
    Degenerate,
    /// `T` is nontrivial but fixed by sigma.
    Missing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub generators: usize,
    pub maps_onto_t: bool,
    /// Size of the additive span of the `V + V` parts of `<K> n W`.
    pub vv_span: u64,
    pub vv_size: u64,
    /// Size of `<K> n V*`.
    pub dual_span: u64,
    pub dual_size: u64,
    pub contains_w: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub ok: bool,
    pub degenerate: bool,
    /// `u` in `V*` with `u^sigma != u`.
    pub dual_witness: Option<String>,
    pub torus: TorusWitness,
    /// `None` when `V + V` exceeds [`SPAN_LIMIT`].
    pub generation: Option<SpanReport>,
}

fn basis_codes(g: &TrialityGroup) -> Vec<Elem> {
    let ring = g.ring();
    let p = ring.characteristic();
    (0..ring.spec().degree()).map(|j| Elem(p.pow(j))).collect()
}

/// Elements `g^-1 g^alpha` for structured and seeded `g` and the five
/// nontrivial `alpha`.
fn commutator_generators(g: &TrialityGroup) -> Vec<GElem> {
    let mut seeds: Vec<GElem> = g
        .t_elements()
        .into_iter()
        .map(|t| GElem {
            t,
            ..GElem::IDENTITY
        })
        .collect();
    for c in basis_codes(g) {
        for i in 0..3 {
            let mut e: Vec3 = [Elem::ZERO; 3];
            e[i] = c;
            seeds.push(GElem {
                v1: e,
                ..GElem::IDENTITY
            });
            seeds.push(GElem {
                v2: e,
                ..GElem::IDENTITY
            });
            seeds.push(GElem {
                u: e,
                ..GElem::IDENTITY
            });
        }
    }
    let mut s = Sampler::new(GENERATION_SEED);
    for _ in 0..RANDOM_GENERATORS {
        seeds.push(g.elem(s.index(g.order())));
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for x in &seeds {
        let xi = g.g_inv(x);
        for w in SWord::ALL.into_iter().skip(1) {
            let k = g.g_mul(&xi, &g.act_g(w, x));
            if k != GElem::IDENTITY && seen.insert(k) {
                out.push(k);
            }
        }
    }
    out
}

/// Additive closure of `gens` inside `Z^dim` modulo the ring, tracking a
/// lift for each reached point. Returns reached points in discovery order
/// and the effective generators.
struct Span<K, L> {
    lifts: HashMap<K, L>,
    order: Vec<K>,
}

impl<K: Copy + Eq + std::hash::Hash, L: Clone> Span<K, L> {
    fn new(zero: K, lift: L) -> Self {
        Span {
            lifts: HashMap::from([(zero, lift)]),
            order: vec![zero],
        }
    }

    /// Adds `step` with lift `gen`; returns false when already spanned.
    fn extend(&mut self, step: K, add: impl Fn(K, K) -> K, lift_step: impl Fn(&L) -> L) -> bool {
        if self.lifts.contains_key(&step) {
            return false;
        }
        let mut i = 0;
        while i < self.order.len() {
            let s = self.order[i];
            let next = add(s, step);
            if !self.lifts.contains_key(&next) {
                let l = lift_step(&self.lifts[&s]);
                self.lifts.insert(next, l);
                self.order.push(next);
            }
            i += 1;
        }
        true
    }
}

type VV = [Elem; 6];

fn vv_of(x: &GElem) -> VV {
    [x.v1[0], x.v1[1], x.v1[2], x.v2[0], x.v2[1], x.v2[2]]
}

pub fn generation_checks(g: &TrialityGroup) -> GenerationReport {
    let ring = g.ring().clone();
    let degenerate = g.params().r0().order() == 1;

    let dual_witness = (0..3).find_map(|i| {
        let mut u = [Elem::ZERO; 3];
        u[i] = Elem::ONE;
        let image = g.act_v_word(&u, SWord::SIGMA);
        (image != u).then(|| format!("{} -> {}", fmt_vec(&u), fmt_vec(&image)))
    });

    let torus = if degenerate {
        TorusWitness::Degenerate
    } else {
        g.t_elements()
            .into_iter()
            .find_map(|t| {
                let image = g.act_t(SWord::SIGMA, t);
                (image != t).then(|| TorusWitness::Moved {
                    t: t.to_string(),
                    image: image.to_string(),
                })
            })
            .unwrap_or(TorusWitness::Missing)
    };

    let q = u64::from(ring.size());
    let generation = (q.pow(6) <= SPAN_LIMIT).then(|| span_report(g));

    let ok = dual_witness.is_some()
        && matches!(torus, TorusWitness::Moved { .. })
        && generation
            .as_ref()
            .is_some_and(|s| s.maps_onto_t && s.contains_w);
    GenerationReport {
        ok,
        degenerate,
        dual_witness,
        torus,
        generation,
    }
}

fn span_report(g: &TrialityGroup) -> SpanReport {
    let ring = g.ring().clone();
    let q = u64::from(ring.size());
    let gens = commutator_generators(g);

    // transversal of the torus image, lifted into <K>
    let mut lift: HashMap<TElem, GElem> = HashMap::from([(TElem::ONE, GElem::IDENTITY)]);
    let mut queue = VecDeque::from([TElem::ONE]);
    while let Some(a) = queue.pop_front() {
        for k in &gens {
            let b = g.t_mul(a, k.t);
            if !lift.contains_key(&b) {
                let l = g.g_mul(&lift[&a], k);
                lift.insert(b, l);
                queue.push_back(b);
            }
        }
    }
    let maps_onto_t = lift.len() == g.t_elements().len();

    // Schreier generators of <K> n W
    let mut w_gens = Vec::new();
    let mut seen = HashSet::new();
    let mut cosets: Vec<(&TElem, &GElem)> = lift.iter().collect();
    cosets.sort();
    for (a, h) in cosets {
        for k in &gens {
            let b = g.t_mul(*a, k.t);
            let s = g.g_mul(&g.g_mul(h, k), &g.g_inv(&lift[&b]));
            debug_assert!(s.in_w());
            if s != GElem::IDENTITY && seen.insert(s) {
                w_gens.push(s);
            }
        }
    }

    // additive span of the V + V images, with lifts into <K> n W
    let add6 = |x: VV, y: VV| std::array::from_fn(|i| ring.add(x[i], y[i]));
    let mut vv: Span<VV, GElem> = Span::new([Elem::ZERO; 6], GElem::IDENTITY);
    let mut effective = Vec::new();
    let mut central: Vec<Vec3> = Vec::new();
    for x in &w_gens {
        let img = vv_of(x);
        if vv.extend(img, add6, |l| g.g_mul(l, x)) {
            effective.push(*x);
        }
    }
    for x in &w_gens {
        if !effective.contains(x) {
            let c = g.g_mul(&g.g_inv(&vv.lifts[&vv_of(x)]), x);
            central.push(c.u);
        }
    }
    let vv_span = vv.order.len() as u64;

    // Schreier generators of <K> n V*
    for s in &vv.order {
        let ls = &vv.lifts[s];
        for e in &effective {
            let target = &vv.lifts[&add6(*s, vv_of(e))];
            let c = g.g_mul(&g.g_mul(ls, e), &g.g_inv(target));
            central.push(c.u);
        }
    }
    let add3 = |x: Vec3, y: Vec3| std::array::from_fn(|i| ring.add(x[i], y[i]));
    let mut dual: Span<Vec3, ()> = Span::new([Elem::ZERO; 3], ());
    let mut distinct = HashSet::new();
    for u in central {
        if distinct.insert(u) {
            dual.extend(u, add3, |_| ());
        }
    }
    let dual_span = dual.order.len() as u64;

    SpanReport {
        generators: gens.len(),
        maps_onto_t,
        vv_span,
        vv_size: q.pow(6),
        dual_span,
        dual_size: q.pow(3),
        contains_w: vv_span == q.pow(6) && dual_span == q.pow(3),
    }
}
