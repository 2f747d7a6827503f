//! Named cross-verification checks, grouped into suites.
//!
//! Every redundant computation in the crate is wired into a check here: the
//! exponential coefficients four ways, eta three ways, the logarithm
//! coefficients across chains/tableaux/planar trees, the flow polynomials
//! across both recursions and the labeling oracle, the Hopf and PBW axioms,
//! and the operator-level identities over Q\[u\]. The CLI `verify` subcommand
//! runs these and reports one line per check.

use crate::arith::{eulerian, rat_string, Int, Rat};
use crate::combinatorics::partition::{partitions, Partition};
use crate::combinatorics::setpart::{count_nonconsecutive_set_partitions, np_closed_formula};
use crate::combinatorics::subexceedent::{permutations, subexceedent_fns, Permutation};
use crate::combinatorics::tableaux::tableaux;
use crate::combinatorics::words::{
    binary_tree_word, binary_trees, canonical_inc, catalan_words, inc_maps, word_binary_tree,
    BinaryTree, CatalanWord,
};
use crate::diffop::{realize, verify_leibniz_normal_form, verify_pbw_decomposition, DPoly, FDiff};
use crate::enveloping::{
    canonical_projection, eta_catalan, eta_decreasing_trees, eta_direct, pbw_classical,
    pbw_classical_monomial, pbw_prelie, pbw_prelie_inv, pbw_prelie_inv_blocks,
    pbw_word_direct, pbw_word_expansion, EnvElement, EnvMonomial,
};
use crate::explogflow::{
    admissible_rhs, c_coefficient, c_coefficient_single_step, c_matrices, circle_product,
    exp_series_closed, exp_series_direct, exp_series_hopf, exp_series_lehmer,
    exp_series_subexceedent, exp_series_trees, factorization_rhs, flow_at_integer,
    flow_planar_values, forward_difference, generator_circle_power, log_series_braces,
    log_series_hopf, log_series_trees, n_coefficient_tableaux, n_planar_vectors, BinomPoly,
    FlowTables,
};
use crate::novikov::{partition_monomial, DiffMonomial, DiffPoly, NovikovElement};
use crate::trees::{permutation_tree, tree_permutation};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A single named check. `run` takes the seed used for any randomized parts
/// and returns a detail string, or a failure description.
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub run: fn(u64) -> Result<String, String>,
}

pub const SUITES: &[&str] = &[
    "catalan",
    "exp",
    "eta",
    "log",
    "flow",
    "hopf",
    "operators",
    "bijections",
];

/// All checks of the given suite, or everything for "all".
pub fn checks_for(suite: &str) -> Vec<Check> {
    all_checks()
        .into_iter()
        .filter(|c| suite == "all" || c.suite == suite)
        .collect()
}

fn fail_if(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Err(msg.into())
    } else {
        Ok(())
    }
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

// ---------------------------------------------------------------------------
// catalan suite
// ---------------------------------------------------------------------------

fn check_word_lists(_seed: u64) -> Result<String, String> {
    let expect3 = ["002", "011"];
    let expect4 = ["0003", "0012", "0021", "0102", "0111"];
    let expect5 = [
        "00004", "00013", "00022", "00031", "00103", "00112", "00121", "00202", "00211", "01003",
        "01012", "01021", "01102", "01111",
    ];
    for (i, expected) in [(3usize, &expect3[..]), (4, &expect4[..]), (5, &expect5[..])] {
        let got: Vec<String> = catalan_words(i).iter().map(|w| w.to_string()).collect();
        fail_if(
            got != expected,
            format!("K_{} mismatch: got {:?}", i, got),
        )?;
    }
    Ok("K_3, K_4, K_5 match the reference lists".into())
}

fn check_catalan_cardinalities(_seed: u64) -> Result<String, String> {
    let mut cat = Int::one();
    for i in 1..=10u64 {
        cat = cat * Int::from(2 * (2 * i - 1)) / Int::from(i + 1);
        let n = catalan_words(i as usize + 1).len();
        fail_if(
            Int::from(n) != cat,
            format!("|K_{}| = {} but Catalan({}) = {}", i + 1, n, i, cat),
        )?;
    }
    Ok("|K_(i+1)| equals the i-th Catalan number for i <= 10".into())
}

fn check_word_coefficient(_seed: u64) -> Result<String, String> {
    let w = CatalanWord::new(vec![0, 0, 0, 2, 0, 1, 3]).map_err(|e| e.to_string())?;
    let c = w.coefficient();
    fail_if(c != Int::from(9), format!("c_0002013 = {}", c))?;
    Ok("c_0002013 = 9".into())
}

fn eight_leaf_figure() -> BinaryTree {
    use BinaryTree::Leaf;
    let d = BinaryTree::node(Leaf, Leaf);
    let c = BinaryTree::node(d, Leaf);
    let a = BinaryTree::node(Leaf, c);
    let e = BinaryTree::node(Leaf, Leaf);
    let f = BinaryTree::node(Leaf, Leaf);
    let b = BinaryTree::node(e, f);
    BinaryTree::node(a, b)
}

fn check_figure_tree(_seed: u64) -> Result<String, String> {
    let w = binary_tree_word(&eight_leaf_figure());
    fail_if(
        w.to_string() != "00120103",
        format!("figure tree maps to {}", w),
    )?;
    let canon = canonical_inc(&w);
    fail_if(
        canon.values() != [4, 3, 4, 8, 6, 8, 8],
        format!("canonical representative {:?}", canon.values()),
    )?;
    Ok("eight-leaf tree -> 00120103, canonical values (4,3,4,8,6,8,8)".into())
}

fn check_magma_factorization(_seed: u64) -> Result<String, String> {
    for i in 2..=10usize {
        for w in catalan_words(i) {
            let Some((u, v)) = w.factor() else {
                return Err(format!("{} does not factor", w));
            };
            fail_if(
                u.join(&v) != w,
                format!("join(factor({})) differs", w),
            )?;
        }
    }
    // join followed by factor is the identity on pairs
    for i in 1..=5usize {
        for j in 1..=(10 - i).min(5) {
            for u in catalan_words(i) {
                for v in catalan_words(j) {
                    let w = u.join(&v);
                    fail_if(
                        w.factor() != Some((u.clone(), v.clone())),
                        format!("factor(join({}, {})) differs", u, v),
                    )?;
                }
            }
        }
    }
    Ok("unique magma factorization on K_i for i <= 10".into())
}

fn check_binary_tree_bijection(_seed: u64) -> Result<String, String> {
    for leaves in 1..=7usize {
        let trees = binary_trees(leaves);
        let mut seen = std::collections::HashSet::new();
        for t in &trees {
            let w = binary_tree_word(t);
            fail_if(
                &word_binary_tree(&w) != t,
                format!("roundtrip failed for {}", w),
            )?;
            fail_if(!seen.insert(w.clone()), format!("duplicate word {}", w))?;
        }
        fail_if(
            seen.len() != catalan_words(leaves).len(),
            format!("missing words at {} leaves", leaves),
        )?;
    }
    Ok("binary-tree bijection is exhaustive for up to 7 leaves".into())
}

fn check_inc_fibers(_seed: u64) -> Result<String, String> {
    for i in 1..=7usize {
        let maps = inc_maps(i);
        for w in catalan_words(i) {
            let fiber = maps.iter().filter(|m| m.multiplicity_word() == w).count();
            fail_if(
                Int::from(fiber) != w.coefficient(),
                format!("fiber over {} has size {}", w, fiber),
            )?;
            let canon = canonical_inc(&w);
            fail_if(
                canon.multiplicity_word() != w,
                format!("canonical map of {} has wrong fibers", w),
            )?;
        }
    }
    Ok("Inc(i) fibers have size c_w for i <= 7".into())
}

// ---------------------------------------------------------------------------
// exp suite
// ---------------------------------------------------------------------------

fn check_np_four_ways(_seed: u64) -> Result<String, String> {
    for n in 0..=7u32 {
        let mut leib: std::collections::HashMap<Partition, Int> = std::collections::HashMap::new();
        for f in subexceedent_fns(n as usize) {
            *leib.entry(f.fiber_partition()).or_default() += 1;
        }
        let mut lehm: std::collections::HashMap<Partition, Int> = std::collections::HashMap::new();
        for s in permutations(n as usize) {
            *lehm.entry(s.lehmer_partition()).or_default() += 1;
        }
        for p in partitions(n) {
            let closed = np_closed_formula(&p);
            let a = leib.get(&p).cloned().unwrap_or_else(Int::zero);
            let b = lehm.get(&p).cloned().unwrap_or_else(Int::zero);
            let c = count_nonconsecutive_set_partitions(&p);
            fail_if(
                closed != a || closed != b || closed != c,
                format!(
                    "N_{} disagrees: closed {}, subexceedent {}, lehmer {}, set partitions {}",
                    p, closed, a, b, c
                ),
            )?;
        }
    }
    Ok("N_p agrees across all four computations for |p| <= 7".into())
}

fn check_eulerian_identity(_seed: u64) -> Result<String, String> {
    for n in 1..=8u32 {
        let mut by_length: std::collections::HashMap<usize, Int> = std::collections::HashMap::new();
        for f in subexceedent_fns(n as usize) {
            *by_length.entry(f.fiber_partition().len()).or_default() += 1;
        }
        for k in 1..=n as usize {
            let total = by_length.get(&k).cloned().unwrap_or_else(Int::zero);
            let a = eulerian(n as u64, k as u64 - 1);
            fail_if(
                total != a,
                format!("sum of N_p over P_({},{}) = {} but a_({},{}) = {}", n, k, total, n, k - 1, a),
            )?;
        }
    }
    Ok("sum of N_p over fixed-length partitions matches the Eulerian numbers for n <= 8".into())
}

fn check_lehmer_worked_examples(_seed: u64) -> Result<String, String> {
    let cases: [(&[u32], &str, &[u32]); 3] = [
        (&[3, 6, 2, 8, 5, 7, 1, 9, 4], "241422010", &[3, 2, 2, 2]),
        (&[8, 1, 2, 3, 7, 4, 5, 9, 6], "700030010", &[6, 1, 1, 1]),
        (&[6, 4, 8, 3, 2, 7, 9, 1, 5], "535212200", &[3, 2, 2, 1, 1]),
    ];
    for (word, code, partition) in cases {
        let sigma = Permutation::new(word.to_vec()).ok_or("not a permutation")?;
        let got = sigma.lehmer_code();
        fail_if(
            got.to_string() != code,
            format!("{} has code {}", sigma, got),
        )?;
        fail_if(
            sigma.lehmer_partition() != part(partition),
            format!("{} has partition {}", sigma, sigma.lehmer_partition()),
        )?;
    }
    Ok("the three worked permutations reproduce their codes and partitions".into())
}

fn check_exp_routes(_seed: u64) -> Result<String, String> {
    let a = exp_series_subexceedent(7);
    fail_if(
        a != exp_series_lehmer(7),
        "subexceedent and Lehmer exponentials differ".to_string(),
    )?;
    fail_if(
        a != exp_series_closed(7),
        "closed-formula exponential differs".to_string(),
    )?;
    fail_if(
        a != exp_series_direct(7),
        "directly iterated exponential differs".to_string(),
    )?;
    fail_if(
        a.truncate(5) != exp_series_trees(5),
        "tree exponential differs".to_string(),
    )?;
    fail_if(
        a.truncate(5) != exp_series_hopf(5),
        "Hopf-route exponential differs".to_string(),
    )?;
    Ok("exponential series agree across all routes (cap 7; tree and Hopf routes cap 5)".into())
}

fn check_descent_correspondence(_seed: u64) -> Result<String, String> {
    for n in 0..=6usize {
        for sigma in permutations(n) {
            fail_if(
                sigma.descents() != sigma.lehmer_code().descents(),
                format!("descents differ for {}", sigma),
            )?;
        }
    }
    Ok("permutation descents match Lehmer-code descents for n <= 6".into())
}

// ---------------------------------------------------------------------------
// eta suite
// ---------------------------------------------------------------------------

fn check_eta_three_ways(_seed: u64) -> Result<String, String> {
    for i in 1..=6usize {
        let fs: Vec<DiffPoly> = (0..i).map(|g| DiffPoly::generator(g as u16)).collect();
        let direct = eta_direct(&fs);
        fail_if(
            direct != eta_catalan(&fs),
            format!("Catalan expansion differs at i = {}", i),
        )?;
        fail_if(
            direct != eta_decreasing_trees(&fs),
            format!("decreasing-tree expansion differs at i = {}", i),
        )?;
    }
    Ok("eta agrees across composition, Catalan words and decreasing trees for i <= 6".into())
}

fn check_eta_coefficient(_seed: u64) -> Result<String, String> {
    let fs: Vec<DiffPoly> = (0..7).map(|g| DiffPoly::generator(g as u16)).collect();
    let direct = eta_direct(&fs);
    let target = DiffMonomial::new(vec![
        (0, -1),
        (1, -1),
        (2, -1),
        (3, 1),
        (4, -1),
        (5, 0),
        (6, 2),
    ]);
    let c = direct.coefficient(&target);
    fail_if(
        c != Rat::from(Int::from(9)),
        format!("coefficient is {}", rat_string(&c)),
    )?;
    Ok("the seven-letter Leibniz term carries coefficient 9".into())
}

// ---------------------------------------------------------------------------
// log suite
// ---------------------------------------------------------------------------

fn check_log_worked_example(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    let p = part(&[2, 1, 1]);
    let expected = [(5u32, 22i64), (4, 17), (3, 1), (2, 0)];
    for (k, v) in expected {
        let got = tables.n_coefficient(&p, k);
        fail_if(
            got != Int::from(v),
            format!("n_(2,1,1),{} = {}", k, got),
        )?;
    }
    let series = tables.log_series(4);
    let coeff = series.coefficient(&p) * Rat::from(p.factorial());
    fail_if(
        coeff != Rat::new(Int::from(29), Int::from(60)),
        format!("coefficient of x_(2,1,1)/2 is {}", rat_string(&coeff)),
    )?;
    Ok("n_(2,1,1),k = 22, 17, 1, 0 and the log coefficient is 29/60".into())
}

fn check_n_three_ways(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    for n in 0..=6u32 {
        let planar = n_planar_vectors(n);
        for p in partitions(n) {
            for k in 1..=n + 1 {
                let chain = tables.n_coefficient(&p, k);
                let tab = n_coefficient_tableaux(&p, k);
                let tree = planar[&p][k as usize - 1].clone();
                fail_if(
                    chain != tab || chain != tree,
                    format!(
                        "n_({},{}) disagrees: chains {}, tableaux {}, planar {}",
                        p, k, chain, tab, tree
                    ),
                )?;
            }
        }
    }
    Ok("n_p,k agrees across chains, tableaux and planar labelings for |p| <= 6".into())
}

fn check_log_routes(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    let cap = 6;
    let a = tables.log_series(cap);
    fail_if(
        a != log_series_braces(cap),
        "brace-sum logarithm differs".to_string(),
    )?;
    fail_if(
        a != log_series_hopf(cap),
        "Hopf-route logarithm differs".to_string(),
    )?;
    fail_if(
        a != log_series_trees(cap),
        "tree logarithm differs".to_string(),
    )?;
    Ok("logarithm series agree across chains, braces, Hopf route and trees (cap 6)".into())
}

fn check_exp_log_roundtrip(_seed: u64) -> Result<String, String> {
    let cap = 6u32;
    let degree_cap = cap as usize + 1;
    let mut tables = FlowTables::new();
    // log then exp: exp_<(log_<(x)) = x through the Hopf factorizations
    let log = tables.log_series(cap);
    let log_letters = EnvElement::from_novikov(&log.element().to_diff());
    let exp_of_log = log_letters
        .exp_star(degree_cap)
        .log_odot(degree_cap)
        .primitive_part_strict()
        .ok_or("exp of log is not primitive")?;
    let back = NovikovElement::from_diff(&exp_of_log).map_err(|e| e.to_string())?;
    fail_if(
        back != NovikovElement::generator(),
        format!("exp(log x) = {:?}", back.to_pairs()),
    )?;
    // exp then log
    let exp = exp_series_subexceedent(cap);
    let exp_letters = EnvElement::from_novikov(&exp.element().to_diff());
    let log_of_exp = exp_letters
        .exp_odot(degree_cap)
        .log_star(degree_cap)
        .map_err(|e| e.to_string())?
        .primitive_part_strict()
        .ok_or("log of exp is not primitive")?;
    let back = NovikovElement::from_diff(&log_of_exp).map_err(|e| e.to_string())?;
    fail_if(
        back != NovikovElement::generator(),
        format!("log(exp x) = {:?}", back.to_pairs()),
    )?;
    Ok("exp and log invert each other on the generator to degree 6".into())
}

// ---------------------------------------------------------------------------
// flow suite
// ---------------------------------------------------------------------------

/// Golden data: Q_p for |p| <= 5: partition, binomial-basis
/// coefficients for k = 1..=|p|+1, monomial coefficients of t^1..=t^{|p|+1}
/// as (numerator, denominator).
#[allow(clippy::type_complexity)]
pub fn reference_flow_table() -> Vec<(Vec<u32>, Vec<i64>, Vec<(i64, i64)>)> {
    vec![
        (vec![], vec![1], vec![(1, 1)]),
        (vec![1], vec![0, 1], vec![(-1, 2), (1, 2)]),
        (vec![2], vec![0, 1, 2], vec![(1, 6), (-1, 2), (1, 3)]),
        (vec![1, 1], vec![0, 0, 1], vec![(1, 3), (-1, 2), (1, 6)]),
        (
            vec![3],
            vec![0, 1, 6, 6],
            vec![(0, 1), (1, 4), (-1, 2), (1, 4)],
        ),
        (
            vec![2, 1],
            vec![0, 0, 5, 8],
            vec![(-1, 3), (7, 6), (-7, 6), (1, 3)],
        ),
        (
            vec![1, 1, 1],
            vec![0, 0, 0, 1],
            vec![(-1, 4), (11, 24), (-1, 4), (1, 24)],
        ),
        (
            vec![4],
            vec![0, 1, 14, 36, 24],
            vec![(-1, 30), (0, 1), (1, 3), (-1, 2), (1, 5)],
        ),
        (
            vec![3, 1],
            vec![0, 0, 13, 51, 42],
            vec![(-1, 60), (-5, 8), (5, 3), (-11, 8), (7, 20)],
        ),
        (
            vec![2, 2],
            vec![0, 0, 4, 18, 16],
            vec![(1, 30), (-5, 12), (5, 6), (-7, 12), (2, 15)],
        ),
        (
            vec![2, 1, 1],
            vec![0, 0, 1, 17, 22],
            vec![(29, 60), (-15, 8), (7, 3), (-9, 8), (11, 60)],
        ),
        (
            vec![1, 1, 1, 1],
            vec![0, 0, 0, 0, 1],
            vec![(1, 5), (-5, 12), (7, 24), (-1, 12), (1, 120)],
        ),
        (
            vec![5],
            vec![0, 1, 30, 150, 240, 120],
            vec![(0, 1), (-1, 12), (0, 1), (5, 12), (-1, 2), (1, 6)],
        ),
        (
            vec![4, 1],
            vec![0, 0, 33, 242, 468, 264],
            vec![(1, 10), (-7, 60), (-1, 1), (9, 4), (-8, 5), (11, 30)],
        ),
        (
            vec![3, 2],
            vec![0, 0, 16, 141, 300, 180],
            vec![(1, 12), (1, 8), (-4, 3), (17, 8), (-5, 4), (1, 4)],
        ),
        (
            vec![3, 1, 1],
            vec![0, 0, 6, 103, 279, 192],
            vec![(1, 20), (41, 40), (-27, 8), (89, 24), (-67, 40), (4, 15)],
        ),
        (
            vec![2, 2, 1],
            vec![0, 0, 2, 58, 182, 136],
            vec![(-1, 10), (271, 180), (-43, 12), (119, 36), (-79, 60), (17, 90)],
        ),
        (
            vec![2, 1, 1, 1],
            vec![0, 0, 0, 7, 49, 52],
            vec![(-37, 60), (929, 360), (-89, 24), (169, 72), (-27, 40), (13, 180)],
        ),
        (
            vec![1, 1, 1, 1, 1],
            vec![0, 0, 0, 0, 0, 1],
            vec![(-1, 6), (137, 360), (-5, 16), (17, 144), (-1, 48), (1, 720)],
        ),
    ]
}

fn check_reference_tables(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    let golden = reference_flow_table();
    let mut count = 0;
    for (parts, binom, mono) in &golden {
        let p = Partition::new(parts.clone()).map_err(|e| e.to_string())?;
        let q = tables.flow_polynomial(&p);
        let got_binom: Vec<Int> = q.binomial_coeffs();
        let want_binom: Vec<Int> = binom.iter().map(|&v| Int::from(v)).collect();
        fail_if(
            got_binom != want_binom,
            format!("Q_{} binomial coefficients {:?}", p, got_binom),
        )?;
        let got_mono = q.monomial_coeffs();
        let want_mono: Vec<Rat> = mono
            .iter()
            .map(|&(n, d)| Rat::new(Int::from(n), Int::from(d)))
            .collect();
        fail_if(
            got_mono != want_mono,
            format!("Q_{} monomial coefficients differ", p),
        )?;
        count += 1;
    }
    // the table covers every partition with |p| <= 5
    let expected: usize = (0..=5u32).map(|n| partitions(n).len()).sum();
    fail_if(count != expected, "golden table incomplete".to_string())?;
    Ok(format!(
        "all {} flow polynomials with |p| <= 5 match the reference table in both bases",
        count
    ))
}

fn check_difference_recursions(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    for n in 0..=5u32 {
        for p in partitions(n) {
            let q = tables.flow_polynomial(&p).poly().clone();
            let delta = forward_difference(&q);
            if p.is_empty() {
                fail_if(
                    delta != BinomPoly::from_coeffs(vec![Int::one()]),
                    "difference of Q_(0) is not 1".to_string(),
                )?;
                continue;
            }
            let rhs1 = factorization_rhs(&p, &mut |r| tables.flow_polynomial(r).poly().clone());
            let rhs2 = admissible_rhs(&p, &mut |r| tables.flow_polynomial(r).poly().clone());
            fail_if(
                delta != rhs1,
                format!("factorization recursion fails for {}", p),
            )?;
            fail_if(
                delta != rhs2,
                format!("admissible-step recursion fails for {}", p),
            )?;
        }
    }
    // the displayed coefficients of the example row: the difference of
    // Q_(2,1) is Q_(2) + 2 Q_(1) Q_(0) = 2 Q_(2) + 4 Q_(1,1) + 3 Q_(1)
    let c21: Vec<(Partition, Int)> = vec![
        (part(&[2]), c_coefficient(&part(&[2, 1]), &part(&[2]))),
        (part(&[1, 1]), c_coefficient(&part(&[2, 1]), &part(&[1, 1]))),
        (part(&[1]), c_coefficient(&part(&[2, 1]), &part(&[1]))),
    ];
    let expected = [Int::from(2), Int::from(4), Int::from(3)];
    for ((p, got), want) in c21.iter().zip(expected.iter()) {
        fail_if(
            got != want,
            format!("C_((2,1),{}) = {}", p, got),
        )?;
    }
    Ok("both difference recursions hold exactly for all |p| <= 5".into())
}

fn check_flow_worked_example(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    let q = tables.flow_polynomial(&part(&[2, 2]));
    let binom: Vec<Int> = q.binomial_coeffs();
    let want: Vec<Int> = [0, 0, 4, 18, 16].iter().map(|&v| Int::from(v)).collect();
    fail_if(binom != want, format!("Q_(2,2) coefficients {:?}", binom))?;
    let ms = c_matrices(&part(&[2, 2, 1]), &part(&[2, 1]));
    fail_if(ms.len() != 4, format!("{} matrices", ms.len()))?;
    let c: Int = ms.iter().map(|m| m.weight()).sum();
    fail_if(c != Int::from(6), format!("C = {}", c))?;
    Ok("Q_(2,2) = 16 binom(t,5) + 18 binom(t,4) + 4 binom(t,3); C_((2,2,1),(2,1)) = 6 via 4 matrices".into())
}

fn check_flow_four_ways(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    for n in 0..=5u32 {
        let oracle = flow_planar_values(n, n + 2);
        for p in partitions(n) {
            let assembled = tables.flow_polynomial(&p).poly().clone();
            let fact = tables.flow_by_factorizations(&p);
            let adm = tables.flow_by_admissible_steps(&p);
            fail_if(
                assembled != fact || assembled != adm,
                format!("recursions disagree for {}", p),
            )?;
            for t in 0..=n + 2 {
                let direct = assembled.eval(t as u64);
                let counted = &oracle[&p][t as usize];
                fail_if(
                    &direct != counted,
                    format!("Q_{}({}) = {} but the labeling count is {}", p, t, direct, counted),
                )?;
            }
        }
    }
    Ok("flow polynomials agree across assembly, both recursions and the labeling oracle (|p| <= 5)".into())
}

fn check_flow_group_law(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    let cap = 4;
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            let qa = flow_at_integer(&mut tables, a, cap);
            let qb = flow_at_integer(&mut tables, b, cap);
            let composed = circle_product(&qa, &qb, cap);
            let direct = flow_at_integer(&mut tables, a + b, cap);
            fail_if(
                composed != direct,
                format!("group law fails at ({}, {})", a, b),
            )?;
        }
    }
    for t in 0..=4u32 {
        fail_if(
            generator_circle_power(t, cap) != flow_at_integer(&mut tables, t, cap),
            format!("iterated circle power differs at t = {}", t),
        )?;
    }
    Ok("the flow composes under the transported group law at integer times".into())
}

fn check_leading_coefficient(_seed: u64) -> Result<String, String> {
    let mut tables = FlowTables::new();
    for n in 0..=6u32 {
        for p in partitions(n) {
            let lead = tables.n_coefficient(&p, n + 1);
            let np = np_closed_formula(&p);
            fail_if(
                lead != np * p.factorial(),
                format!("leading coefficient mismatch for {}", p),
            )?;
        }
    }
    Ok("N_p p! is the top binomial coefficient of Q_p for |p| <= 6".into())
}

fn check_single_step_rule(_seed: u64) -> Result<String, String> {
    for n in 1..=7u32 {
        for p in partitions(n) {
            for q in partitions(n - 1) {
                if q.lt(&p) {
                    let rule = c_coefficient_single_step(&p, &q).map_err(|e| e.to_string())?;
                    let matrices = c_coefficient(&p, &q);
                    fail_if(
                        rule != matrices,
                        format!("single-step rule differs on {} -> {}", q, p),
                    )?;
                }
            }
        }
    }
    Ok("the single-cell rule matches the matrix enumeration for |p| <= 7".into())
}

fn check_semistandard_inclusion(_seed: u64) -> Result<String, String> {
    for n in 1..=5u32 {
        for p in partitions(n) {
            for k in 1..=n {
                let family = tableaux(&p, k);
                for filling in surjective_monotone_fillings(&p, k) {
                    if is_semistandard(&filling) {
                        fail_if(
                            !family.iter().any(|t| t.rows() == filling.as_slice()),
                            format!("semistandard filling of {} with k = {} missing", p, k),
                        )?;
                    }
                }
            }
        }
    }
    Ok("semistandard tableaux all satisfy the chain rules for |p| <= 5".into())
}

fn surjective_monotone_fillings(p: &Partition, k: u32) -> Vec<Vec<Vec<u32>>> {
    let shape: Vec<usize> = p.parts().iter().map(|&x| x as usize).collect();
    let mut rows: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fn go(shape: &[usize], rows: &mut Vec<Vec<u32>>, r: usize, c: usize, k: u32, out: &mut Vec<Vec<Vec<u32>>>) {
        if r == shape.len() {
            let mut seen = vec![false; k as usize + 1];
            for row in rows.iter() {
                for &l in row {
                    seen[l as usize] = true;
                }
            }
            if seen[1..].iter().all(|&b| b) {
                out.push(rows.clone());
            }
            return;
        }
        if c == shape[r] {
            go(shape, rows, r + 1, 0, k, out);
            return;
        }
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(rows[r][c - 1]);
        }
        if r > 0 && c < shape[r - 1] {
            lo = lo.max(rows[r - 1][c]);
        }
        for label in lo..=k {
            rows[r][c] = label;
            go(shape, rows, r, c + 1, k, out);
        }
        rows[r][c] = 0;
    }
    go(&shape, &mut rows, 0, 0, k, &mut out);
    out
}

#[allow(clippy::needless_range_loop)] // compares against the previous row
fn is_semistandard(rows: &[Vec<u32>]) -> bool {
    for r in 1..rows.len() {
        for c in 0..rows[r].len() {
            if rows[r][c] <= rows[r - 1][c] {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// hopf suite
// ---------------------------------------------------------------------------

/// A seeded element with up to 3 monomials, each of at most `max_letters`
/// letters and total degree at most 4, over the given abstract generators.
fn random_env_element(rng: &mut ChaCha8Rng, max_letters: usize, generators: u16) -> EnvElement {
    let mut out = EnvElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let count = rng.gen_range(1..=max_letters);
        let mut budget = 4usize.saturating_sub(count); // degree above 1 per letter
        let letters: Vec<DiffMonomial> = (0..count)
            .map(|_| {
                let extra = rng.gen_range(0..=budget.min(2)) as u32;
                budget -= extra as usize;
                let sizes = partitions(extra);
                let p = sizes[rng.gen_range(0..sizes.len())].clone();
                let g = rng.gen_range(0..generators);
                relabel(&partition_monomial(&p), g)
            })
            .collect();
        let coeff = Rat::new(Int::from(rng.gen_range(-3i64..=3)), Int::from(rng.gen_range(1i64..=3)));
        if !coeff.is_zero() {
            out.add_term(EnvMonomial::new(letters), coeff);
        }
    }
    out
}

fn relabel(m: &DiffMonomial, g: u16) -> DiffMonomial {
    DiffMonomial::new(m.factors().iter().map(|&(_, i)| (g, i)).collect())
}

fn check_star_associativity(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..4 {
        let a = random_env_element(&mut rng, 3, 3);
        let b = random_env_element(&mut rng, 3, 3);
        let c = random_env_element(&mut rng, 3, 3);
        let lhs = a.star(&b, None).star(&c, None);
        let rhs = a.star(&b.star(&c, None), None);
        fail_if(lhs != rhs, format!("associativity fails in round {}", round))?;
    }
    Ok("star is associative on seeded random elements with up to 3 letters".into())
}

fn check_coproduct_multiplicative(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    for round in 0..6 {
        let a = random_env_element(&mut rng, 2, 3);
        let b = random_env_element(&mut rng, 2, 3);
        let lhs = a.star(&b, None).coproduct();
        let rhs = a.coproduct().star(&b.coproduct());
        fail_if(
            lhs != rhs,
            format!("coproduct multiplicativity fails in round {}", round),
        )?;
        fail_if(lhs != lhs.swap(), format!("cocommutativity fails in round {}", round))?;
    }
    Ok("the unshuffle coproduct is multiplicative and cocommutative on seeded elements".into())
}

fn check_pbw_roundtrip(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    // sorted words of length <= 4 come back unchanged
    for _ in 0..6 {
        let len = rng.gen_range(1..=4);
        let mut word: Vec<DiffMonomial> = (0..len)
            .map(|_| DiffMonomial::generator(rng.gen_range(0..3u16)))
            .collect();
        word.sort_unstable();
        let e = pbw_prelie_inv(&word);
        let mut expected = crate::enveloping::TensorCombination::zero();
        expected.add_term(word.clone(), Rat::one());
        fail_if(
            pbw_prelie(&e) != expected,
            format!("word roundtrip failed on a word of length {}", len),
        )?;
        fail_if(
            pbw_prelie_inv_blocks(&word) != e,
            "block formula disagrees with the iterated product".to_string(),
        )?;
    }
    // pbw_inv after pbw is the identity on elements
    for round in 0..4 {
        let e = random_env_element(&mut rng, 3, 3);
        fail_if(
            pbw_prelie(&e).pbw_inv() != e,
            format!("element roundtrip fails in round {}", round),
        )?;
    }
    Ok("the PBW isomorphism and its inverse compose to the identity".into())
}

fn check_projections(_seed: u64) -> Result<String, String> {
    // all monomials of letter-count <= 4 over up to 3 generators, letters of
    // total degree <= 4
    let letters: Vec<DiffMonomial> = (0..3u16).map(DiffMonomial::generator).collect();
    let mut monomials = Vec::new();
    for a in 0..3usize {
        monomials.push(EnvMonomial::new(vec![letters[a].clone()]));
        for b in a..3 {
            monomials.push(EnvMonomial::new(vec![
                letters[a].clone(),
                letters[b].clone(),
            ]));
            for c in b..3 {
                monomials.push(EnvMonomial::new(vec![
                    letters[a].clone(),
                    letters[b].clone(),
                    letters[c].clone(),
                ]));
                for d in c..3 {
                    monomials.push(EnvMonomial::new(vec![
                        letters[a].clone(),
                        letters[b].clone(),
                        letters[c].clone(),
                        letters[d].clone(),
                    ]));
                }
            }
        }
    }
    for mono in monomials {
        let e = EnvElement::from_monomial(mono.clone());
        let m = mono.letter_count();
        let mut total = EnvElement::zero();
        let images: Vec<EnvElement> =
            (1..=m).map(|n| canonical_projection(n, &e)).collect();
        for (i, en) in images.iter().enumerate() {
            total = total.add(en);
            fail_if(
                &canonical_projection(i + 1, en) != en,
                format!("projection {} is not idempotent on {}", i + 1, mono),
            )?;
            for (j, _) in images.iter().enumerate() {
                if i != j {
                    fail_if(
                        !canonical_projection(j + 1, en).is_zero(),
                        format!("projections {} and {} overlap on {}", i + 1, j + 1, mono),
                    )?;
                }
            }
        }
        fail_if(
            total != e,
            format!("projections do not resolve the identity on {}", mono),
        )?;
    }
    Ok("canonical projections are complete orthogonal idempotents on degree <= 4 monomials".into())
}

fn check_pbw_classical_example(_seed: u64) -> Result<String, String> {
    let x = DiffPoly::generator(0);
    let y = DiffPoly::generator(1);
    let xy = EnvMonomial::new(vec![DiffMonomial::generator(0), DiffMonomial::generator(1)]);
    let got = pbw_classical_monomial(&xy);
    let braces = x.brace(&[&y]).add(&y.brace(&[&x]));
    let expected = EnvElement::from_monomial(xy)
        .add(&EnvElement::from_novikov(&braces).scale(&Rat::new(Int::one(), Int::from(2))));
    fail_if(got != expected, "pbw(x . y) differs".to_string())?;
    // and pbw restricted to letters is the identity
    let letter = EnvElement::from_letter(DiffMonomial::generator(2));
    fail_if(
        pbw_classical(&letter) != letter,
        "pbw does not fix letters".to_string(),
    )?;
    Ok("pbw(x . y) = x . y + (x{y} + y{x})/2".into())
}

fn check_word_expansion(_seed: u64) -> Result<String, String> {
    for i in 1..=5usize {
        fail_if(
            pbw_word_expansion(i) != pbw_word_direct(i),
            format!("word expansion differs at i = {}", i),
        )?;
    }
    Ok("the descending star product matches its block expansion for i <= 5".into())
}

fn check_novikov_axioms(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    for round in 0..8 {
        let a = random_novikov(&mut rng, 4);
        let b = random_novikov(&mut rng, 4);
        let c = random_novikov(&mut rng, 4);
        // right Novikov: a < (b < c) = b < (a < c)
        let lhs = a.triangle(&b.triangle(&c));
        let rhs = b.triangle(&a.triangle(&c));
        fail_if(lhs != rhs, format!("Novikov identity fails in round {}", round))?;
        // pre-Lie: associator symmetric in the last two arguments
        let assoc1 = a.triangle(&b).triangle(&c).sub(&a.triangle(&b.triangle(&c)));
        let assoc2 = a.triangle(&c).triangle(&b).sub(&a.triangle(&c.triangle(&b)));
        fail_if(assoc1 != assoc2, format!("pre-Lie identity fails in round {}", round))?;
    }
    Ok("Novikov and pre-Lie identities hold on seeded random elements of degree <= 4".into())
}

fn random_novikov(rng: &mut ChaCha8Rng, max_size: u32) -> NovikovElement {
    let mut out = NovikovElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let n = rng.gen_range(0..=max_size.saturating_sub(1));
        let ps = partitions(n);
        let p = ps[rng.gen_range(0..ps.len())].clone();
        let coeff = Rat::new(
            Int::from(rng.gen_range(-3i64..=3)),
            Int::from(rng.gen_range(1i64..=3)),
        );
        out.add_term(p, coeff);
    }
    out
}

// ---------------------------------------------------------------------------
// operators suite
// ---------------------------------------------------------------------------

fn check_leibniz_operator(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    for i in 1..=5usize {
        let fs: Vec<DPoly> = (0..i).map(|_| DPoly::random(&mut rng, 3)).collect();
        fail_if(
            !verify_leibniz_normal_form(&fs),
            format!("normal form fails at i = {}", i),
        )?;
    }
    Ok("the iterated-Leibniz normal form holds for i <= 5 over Q[u]".into())
}

fn check_pbw_operator(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
    for m in 1..=4usize {
        let fs: Vec<DPoly> = (0..m).map(|_| DPoly::random(&mut rng, 3)).collect();
        fail_if(
            !verify_pbw_decomposition(&fs),
            format!("operator PBW decomposition fails at m = {}", m),
        )?;
    }
    // the displayed order-two identity
    let x = DPoly::random(&mut rng, 3);
    let y = DPoly::random(&mut rng, 3);
    let lhs = FDiff::from_term(x.mul(&y), 2);
    let first = FDiff::from_term(
        x.mul(&y.derivative())
            .add(&y.mul(&x.derivative()))
            .scale(&Rat::new(Int::from(-1), Int::from(2))),
        1,
    );
    let xd = FDiff::from_term(x, 1);
    let yd = FDiff::from_term(y, 1);
    let second = xd
        .compose(&yd)
        .add(&yd.compose(&xd))
        .scale(&Rat::new(Int::one(), Int::from(2)));
    fail_if(
        lhs != first.add(&second),
        "order-two decomposition differs".to_string(),
    )?;
    Ok("the operator PBW decomposition holds for m <= 4, including the order-two identity".into())
}

fn check_ev_homomorphism(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(6));
    for round in 0..6 {
        let a = FDiff::from_term(DPoly::random(&mut rng, 2), rng.gen_range(0..=2));
        let b = FDiff::from_term(DPoly::random(&mut rng, 2), rng.gen_range(0..=2));
        let f = DPoly::random(&mut rng, 5);
        fail_if(
            a.compose(&b).apply(&f) != a.apply(&b.apply(&f)),
            format!("evaluation homomorphism fails in round {}", round),
        )?;
    }
    Ok("applying a composition equals iterated application on seeded inputs".into())
}

fn check_eta_realized(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7));
    for i in 1..=5usize {
        let abstract_fs: Vec<DiffPoly> = (0..i).map(|g| DiffPoly::generator(g as u16)).collect();
        let realizations: Vec<DPoly> = (0..i).map(|_| DPoly::random(&mut rng, 3)).collect();
        let eta_abs = realize(&eta_direct(&abstract_fs), &realizations);
        // (f_1 d) o ... o (f_{i-1} d) applied to f_i
        let mut value = realizations[i - 1].clone();
        for f in realizations[..i - 1].iter().rev() {
            value = f.mul(&value.derivative());
        }
        fail_if(
            eta_abs != value,
            format!("realized eta differs at i = {}", i),
        )?;
    }
    Ok("the abstract eta realizes to the iterated first-order operators for i <= 5".into())
}

// ---------------------------------------------------------------------------
// bijections suite
// ---------------------------------------------------------------------------

fn check_gamma_bijection(_seed: u64) -> Result<String, String> {
    for n in 0..=6usize {
        let mut seen = std::collections::HashSet::new();
        for sigma in permutations(n) {
            let t = permutation_tree(&sigma);
            fail_if(
                tree_permutation(&t) != sigma,
                format!("insertion bijection fails on {}", sigma),
            )?;
            fail_if(!seen.insert(t.clone()), format!("collision at {}", sigma))?;
            if n >= 1 {
                fail_if(
                    t.shape().fertility_partition() != sigma.lehmer_partition(),
                    format!("diagram does not commute on {}", sigma),
                )?;
            }
        }
        let expected: usize = (1..=n).product::<usize>().max(1);
        fail_if(
            seen.len() != expected,
            format!("not a bijection onto increasing trees at n = {}", n),
        )?;
    }
    // the displayed example
    let sigma = Permutation::new(vec![3, 5, 4, 1, 2]).ok_or("bad permutation")?;
    let t = permutation_tree(&sigma);
    fail_if(
        t.parents() != [1, 1, 3, 3, 4],
        format!("tree of 35412 has parents {:?}", t.parents()),
    )?;
    Ok("the insertion map is a bijection commuting with the Lehmer statistic for n <= 6".into())
}

fn check_leib_code_bijection(_seed: u64) -> Result<String, String> {
    for n in 0..=7usize {
        let mut seen = std::collections::HashSet::new();
        for f in subexceedent_fns(n) {
            let code = f.code();
            fail_if(
                crate::combinatorics::LehmerCode::new(code.letters().to_vec()).is_none(),
                "code is not a Lehmer code".to_string(),
            )?;
            fail_if(!seen.insert(code), "code collision".to_string())?;
        }
        let expected: usize = (1..=n).product::<usize>().max(1);
        fail_if(seen.len() != expected, format!("not onto at n = {}", n))?;
    }
    Ok("the reversal code is a bijection onto Lehmer codes for n <= 7".into())
}

fn check_fiber_statistics_match(_seed: u64) -> Result<String, String> {
    for n in 0..=7u32 {
        let mut leib: std::collections::HashMap<Partition, usize> = std::collections::HashMap::new();
        for f in subexceedent_fns(n as usize) {
            *leib.entry(f.fiber_partition()).or_default() += 1;
        }
        let mut lehm: std::collections::HashMap<Partition, usize> = std::collections::HashMap::new();
        for s in permutations(n as usize) {
            *lehm.entry(s.lehmer_partition()).or_default() += 1;
        }
        fail_if(
            leib != lehm,
            format!("fiber statistics differ at n = {}", n),
        )?;
    }
    Ok("subexceedent and Lehmer fibers carry the same partition statistic for n <= 7".into())
}

/// The full check registry.
pub fn all_checks() -> Vec<Check> {
    vec![
        Check { suite: "catalan", name: "word-lists", run: check_word_lists },
        Check { suite: "catalan", name: "catalan-cardinalities", run: check_catalan_cardinalities },
        Check { suite: "catalan", name: "word-coefficient", run: check_word_coefficient },
        Check { suite: "catalan", name: "figure-tree", run: check_figure_tree },
        Check { suite: "catalan", name: "magma-factorization", run: check_magma_factorization },
        Check { suite: "catalan", name: "binary-tree-bijection", run: check_binary_tree_bijection },
        Check { suite: "catalan", name: "inc-fibers", run: check_inc_fibers },
        Check { suite: "exp", name: "np-four-ways", run: check_np_four_ways },
        Check { suite: "exp", name: "eulerian-identity", run: check_eulerian_identity },
        Check { suite: "exp", name: "lehmer-worked-examples", run: check_lehmer_worked_examples },
        Check { suite: "exp", name: "exp-routes", run: check_exp_routes },
        Check { suite: "exp", name: "descent-correspondence", run: check_descent_correspondence },
        Check { suite: "eta", name: "eta-three-ways", run: check_eta_three_ways },
        Check { suite: "eta", name: "eta-coefficient", run: check_eta_coefficient },
        Check { suite: "log", name: "log-worked-example", run: check_log_worked_example },
        Check { suite: "log", name: "n-three-ways", run: check_n_three_ways },
        Check { suite: "log", name: "log-routes", run: check_log_routes },
        Check { suite: "log", name: "exp-log-roundtrip", run: check_exp_log_roundtrip },
        Check { suite: "flow", name: "reference-tables", run: check_reference_tables },
        Check { suite: "flow", name: "difference-recursions", run: check_difference_recursions },
        Check { suite: "flow", name: "flow-worked-example", run: check_flow_worked_example },
        Check { suite: "flow", name: "flow-four-ways", run: check_flow_four_ways },
        Check { suite: "flow", name: "flow-group-law", run: check_flow_group_law },
        Check { suite: "flow", name: "leading-coefficient", run: check_leading_coefficient },
        Check { suite: "flow", name: "single-step-rule", run: check_single_step_rule },
        Check { suite: "flow", name: "semistandard-inclusion", run: check_semistandard_inclusion },
        Check { suite: "hopf", name: "star-associativity", run: check_star_associativity },
        Check { suite: "hopf", name: "coproduct-multiplicative", run: check_coproduct_multiplicative },
        Check { suite: "hopf", name: "pbw-roundtrip", run: check_pbw_roundtrip },
        Check { suite: "hopf", name: "canonical-projections", run: check_projections },
        Check { suite: "hopf", name: "pbw-classical-example", run: check_pbw_classical_example },
        Check { suite: "hopf", name: "word-expansion", run: check_word_expansion },
        Check { suite: "hopf", name: "novikov-axioms", run: check_novikov_axioms },
        Check { suite: "operators", name: "leibniz-normal-form", run: check_leibniz_operator },
        Check { suite: "operators", name: "pbw-decomposition", run: check_pbw_operator },
        Check { suite: "operators", name: "ev-homomorphism", run: check_ev_homomorphism },
        Check { suite: "operators", name: "eta-realized", run: check_eta_realized },
        Check { suite: "bijections", name: "gamma-bijection", run: check_gamma_bijection },
        Check { suite: "bijections", name: "leib-code-bijection", run: check_leib_code_bijection },
        Check { suite: "bijections", name: "fiber-statistics", run: check_fiber_statistics_match },
    ]
}
