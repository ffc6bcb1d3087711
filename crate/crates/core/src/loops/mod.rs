//! Generic finite-loop machinery.
//!
//! Loops are handled through their canonical carrier order: elements are
//! indices `0..order()` and multiplication is an oracle on indices. Concrete
//! loops (tables, `M_{a,b}`, isotopes, quotients) implement [`FiniteLoop`].

mod structure;
mod table;
mod verify;

pub use structure::{
    associates, associator, is_associative, is_commutative, is_cyclic_group, isotope,
    normal_structure, nucleus, NormalReport,
};
pub use table::{write_table_csv, TableLoop, TableMagma};
pub use verify::{
    verify_inverse_identities, verify_loop_axioms, verify_moufang, AxiomReport, AxiomWitness,
    IdentityReport,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("operation has no two-sided identity")]
    NoIdentity,
    #[error("table of length {len} is not square")]
    NotSquare { len: usize },
    #[error("table entry {value} outside carrier of size {order}")]
    EntryOutOfRange { value: usize, order: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("subset is not a subloop: {0}")]
    NotSubloop(String),
    #[error("coset multiplication is not well defined at ({0}, {1})")]
    IllDefinedQuotient(usize, usize),
    #[error("element {0} outside carrier")]
    OutOfRange(usize),
}

/// A finite set with a binary operation, elements addressed by index.
pub trait Magma: Sync {
    fn order(&self) -> usize;

    fn mul(&self, a: usize, b: usize) -> usize;

    /// Human-readable rendering of an element (used for witnesses).
    fn label(&self, a: usize) -> String {
        a.to_string()
    }
}

/// A magma with a two-sided identity. The Latin-square property is not
/// assumed; check it with [`verify_loop_axioms`].
pub trait FiniteLoop: Magma {
    fn identity(&self) -> usize;

    /// The two-sided inverse, located by search unless overridden.
    fn inv(&self, a: usize) -> Option<usize> {
        let e = self.identity();
        (0..self.order()).find(|&x| self.mul(a, x) == e && self.mul(x, a) == e)
    }

    /// The unique `w` with `a * w = b`, located by search unless overridden.
    fn left_div(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.order()).find(|&w| self.mul(a, w) == b)
    }
}

impl<T: Magma + ?Sized> Magma for &T {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn label(&self, a: usize) -> String {
        (**self).label(a)
    }
}

impl<T: FiniteLoop + ?Sized> FiniteLoop for &T {
    fn identity(&self) -> usize {
        (**self).identity()
    }
    fn inv(&self, a: usize) -> Option<usize> {
        (**self).inv(a)
    }
    fn left_div(&self, a: usize, b: usize) -> Option<usize> {
        (**self).left_div(a, b)
    }
}

/// Locates a two-sided identity by search.
pub fn find_identity<M: Magma + ?Sized>(m: &M) -> Option<usize> {
    let n = m.order();
    (0..n).find(|&e| (0..n).all(|x| m.mul(e, x) == x && m.mul(x, e) == x))
}
