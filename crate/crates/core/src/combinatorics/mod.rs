//! Enumerative substrate: partitions, Catalan words, increasing and
//! subexceedent maps, Lehmer codes, tableaux, set partitions, and the
//! Stirling/Eulerian numbers.

pub mod partition;
pub mod setpart;
pub mod subexceedent;
pub mod tableaux;
pub mod words;

pub use partition::{partitions, partitions_up_to, partitions_with_len, Partition};
pub use setpart::{
    count_nonconsecutive_set_partitions, np_closed_formula, ordered_set_partitions,
    set_partitions_by_minima, set_partitions_with_sizes,
};
pub use subexceedent::{permutations, subexceedent_fns, LehmerCode, Permutation, Subexceedent};
pub use tableaux::{standard_tableaux, tableaux, Tableau};
pub use words::{
    binary_tree_word, binary_trees, canonical_inc, catalan_words, inc_maps, word_binary_tree,
    BinaryTree, CatalanWord, IncMap,
};
