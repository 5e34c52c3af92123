use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::WordGraph;
use crate::error::{Error, Result};

/// Upper bound for path and derivation counts. Exceeding it is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountCap(BigUint);

impl CountCap {
    pub fn new(limit: BigUint) -> Self {
        CountCap(limit)
    }

    pub fn pow2(bits: u32) -> Self {
        CountCap(BigUint::one() << bits)
    }

    pub fn limit(&self) -> &BigUint {
        &self.0
    }

    fn check(&self, value: &BigUint) -> Result<()> {
        if value > &self.0 {
            Err(Error::CountOverflow)
        } else {
            Ok(())
        }
    }
}

impl Default for CountCap {
    fn default() -> Self {
        CountCap::pow2(128)
    }
}

/// Number of start-to-end paths; parallel edges count separately.
pub fn count_paths(g: &WordGraph) -> Result<BigUint> {
    count_paths_capped(g, &CountCap::default())
}

pub fn count_paths_capped(g: &WordGraph, cap: &CountCap) -> Result<BigUint> {
    let mut paths = vec![BigUint::zero(); g.vertex_count()];
    for v in g.topological_order().iter() {
        let mut total = if v == g.start() {
            BigUint::one()
        } else {
            BigUint::zero()
        };
        for e in g.in_edges(v) {
            total += &paths[e.src.0];
        }
        cap.check(&total)?;
        paths[v.0] = total;
    }
    Ok(core::mem::take(&mut paths[g.end().0]))
}

/// Which vertices seed a length-1 derivation in [`parser_steps_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ParserInit {
    /// `deriv_v[1] = 1` at every vertex, as the algorithm is usually printed.
    #[default]
    AllVertices,
    /// Only the start vertex seeds derivations, mirroring path counting.
    StartOnly,
}

/// Steps of a fictitious parser over the graph.
pub fn parser_steps(g: &WordGraph) -> Result<BigUint> {
    parser_steps_with(g, ParserInit::AllVertices, &CountCap::default())
}

/// `deriv_v[i] = sum over edges u->v of deriv_u[i-1]` for `i` in `2..=|V|`,
/// summed over all vertices and lengths.
///
/// Each vertex only stores the lengths that can be non-zero (up to the
/// longest path into it), which gives the same total as the dense table.
pub fn parser_steps_with(g: &WordGraph, init: ParserInit, cap: &CountCap) -> Result<BigUint> {
    let n = g.vertex_count();
    // deriv[v][k] holds deriv_v[k + 1]
    let mut deriv: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    let mut total = BigUint::zero();
    for v in g.topological_order().iter() {
        let seed = match init {
            ParserInit::AllVertices => true,
            ParserInit::StartOnly => v == g.start(),
        };
        let longest_pred = g
            .in_edges(v)
            .map(|e| deriv[e.src.0].len())
            .max()
            .unwrap_or(0);
        let len = (longest_pred + 1).min(n);
        let mut row = vec![BigUint::zero(); len];
        if seed {
            row[0] = BigUint::one();
        }
        for e in g.in_edges(v) {
            let pred = &deriv[e.src.0];
            for k in 1..len {
                if let Some(x) = pred.get(k - 1) {
                    row[k] += x;
                }
            }
        }
        for x in &row[1..] {
            total += x;
        }
        cap.check(&total)?;
        deriv[v.0] = row;
    }
    Ok(total)
}
