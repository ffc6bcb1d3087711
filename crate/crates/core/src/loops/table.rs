use std::io::Write;

use super::{find_identity, FiniteLoop, LoopError, Magma};

/// An operation given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMagma {
    order: usize,
    table: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl TableMagma {
    /// `table[a * n + b]` is the product `a * b`.
    pub fn new(table: Vec<u32>) -> Result<Self, LoopError> {
        let order = (table.len() as f64).sqrt().round() as usize;
        if order * order != table.len() {
            return Err(LoopError::NotSquare { len: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= order) {
            return Err(LoopError::EntryOutOfRange {
                value: bad as usize,
                order,
            });
        }
        Ok(TableMagma {
            order,
            table,
            labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, LoopError> {
        Self::new(rows.iter().flatten().copied().collect())
    }

    /// Materializes any magma.
    pub fn from_magma<M: Magma + ?Sized>(m: &M) -> Self {
        let n = m.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(m.mul(a, b) as u32);
            }
        }
        TableMagma {
            order: n,
            table,
            labels: Some((0..n).map(|a| m.label(a)).collect()),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }
}

impl Magma for TableMagma {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }
}

/// A table-backed loop with cached inverses and left divisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableLoop {
    magma: TableMagma,
    identity: usize,
    /// `left_div[a * n + b]` = w with `a w = b`, or `u32::MAX` if none.
    left_div: Vec<u32>,
}

impl TableLoop {
    /// Requires a two-sided identity, which is located by search.
    pub fn new(magma: TableMagma) -> Result<Self, LoopError> {
        let identity = find_identity(&magma).ok_or(LoopError::NoIdentity)?;
        let n = magma.order;
        let mut left_div = vec![u32::MAX; n * n];
        for a in 0..n {
            for w in 0..n {
                let b = magma.mul(a, w);
                let slot = &mut left_div[a * n + b];
                if *slot == u32::MAX {
                    *slot = w as u32;
                }
            }
        }
        Ok(TableLoop {
            magma,
            identity,
            left_div,
        })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, LoopError> {
        Self::new(TableMagma::from_rows(rows)?)
    }

    pub fn from_loop<L: FiniteLoop + ?Sized>(l: &L) -> Self {
        Self::new(TableMagma::from_magma(l)).expect("source loop has an identity")
    }

    pub fn magma(&self) -> &TableMagma {
        &self.magma
    }

    pub fn table(&self) -> &[u32] {
        self.magma.table()
    }
}

impl Magma for TableLoop {
    fn order(&self) -> usize {
        self.magma.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.magma.mul(a, b)
    }

    fn label(&self, a: usize) -> String {
        self.magma.label(a)
    }
}

impl FiniteLoop for TableLoop {
    fn identity(&self) -> usize {
        self.identity
    }

    fn inv(&self, a: usize) -> Option<usize> {
        let x = self.left_div(a, self.identity)?;
        (self.mul(x, a) == self.identity).then_some(x)
    }

    fn left_div(&self, a: usize, b: usize) -> Option<usize> {
        match self.left_div[a * self.magma.order + b] {
            u32::MAX => None,
            w => Some(w as usize),
        }
    }
}

/// Writes the multiplication table as CSV: one header row of element
/// encodings (canonical indices), then `order` rows of products.
pub fn write_table_csv<M: Magma + ?Sized, W: Write>(m: &M, out: W) -> csv::Result<()> {
    let n = m.order();
    let mut w = csv::WriterBuilder::new().from_writer(out);
    w.write_record((0..n).map(|a| a.to_string()))?;
    let mut row = Vec::with_capacity(n);
    for a in 0..n {
        row.clear();
        row.extend((0..n).map(|b| m.mul(a, b).to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
