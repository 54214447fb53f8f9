//! Necklace constructions: FKM de Bruijn sequences, products, interleaving,
//! concatenation along the necklace graph, and closed walks.

mod graph;
mod interleave;
mod lyndon;
mod product;

pub use graph::{closed_walks, concat_partition, necklace_graph, NecklaceGraph};
pub use interleave::{
    deinterleave, interleave, interleave_pair_odd, interleave_pair_odd_with, interleave_with,
    interleave_words, rotation_index, RotationIndexedWord,
};
pub use lyndon::{fkm_debruijn, lyndon_words, necklaces};
pub use product::{merge, product, product_with};

use crate::error::{Error, Result};
use crate::words::Colouring;

fn require_valid(c: &Colouring) -> Result<()> {
    match c.is_valid().first_conflict {
        None => Ok(()),
        Some(conflict) => Err(Error::InvalidInput(format!(
            "input colouring repeats window {:?} at {:?} and {:?}",
            conflict.window, conflict.first, conflict.second
        ))),
    }
}
