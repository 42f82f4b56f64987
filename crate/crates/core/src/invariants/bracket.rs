use rayon::prelude::*;

use super::laurent::LaurentPoly;
use crate::diagram::PDCode;
use crate::{Error, Result};

/// State-sum bound: `2^16` states is where exhaustive enumeration stops being
/// a desk-scale computation.
pub const MAX_STATE_SUM_CROSSINGS: usize = 16;

/// Kauffman bracket by full state enumeration, `<unknot> = 1` convention:
/// each state contributes `A^(a-b) delta^(loops-1)` with
/// `delta = -A^2 - A^-2`.
///
/// The A-smoothing of `X(a,b,c,d)` joins arcs `a-b` and `c-d`; the
/// B-smoothing joins `a-d` and `b-c`.
pub fn kauffman_bracket(pd: &PDCode) -> Result<LaurentPoly> {
    Ok(bracket_with_states(pd)?.0)
}

/// Bracket plus the number of states enumerated (exactly `2^k`).
pub fn bracket_with_states(pd: &PDCode) -> Result<(LaurentPoly, u64)> {
    let k = pd.crossing_count();
    if k > MAX_STATE_SUM_CROSSINGS {
        return Err(Error::TooManyCrossings(k));
    }
    if k == 0 {
        return Ok((LaurentPoly::one(), 1));
    }

    // delta powers up to the most loops a state can have
    let delta = &LaurentPoly::term(2, -1) + &LaurentPoly::term(-2, -1);
    let mut delta_pow = vec![LaurentPoly::one()];
    for _ in 0..=k {
        delta_pow.push(&delta_pow.last().unwrap().clone() * &delta);
    }

    let states = 1u64 << k;
    let chunk = 1u64 << k.saturating_sub(6).min(10);
    let sum = (0..states / chunk)
        .into_par_iter()
        .map(|block| {
            let start = block * chunk;
            let mut acc = LaurentPoly::zero();
            for state in start..(start + chunk).min(states) {
                let (a_count, loops) = state_loops(pd, state);
                let b_count = k as i64 - a_count;
                let exp = a_count - b_count;
                acc += &(&LaurentPoly::term(exp, 1) * &delta_pow[loops - 1]);
            }
            acc
        })
        .reduce(LaurentPoly::zero, |a, b| &a + &b);
    Ok((sum, states))
}

/// Loop count of one smoothing state via union-find over arc labels.
/// Bit `i` set means crossing `i` takes the B-smoothing.
fn state_loops(pd: &PDCode, state: u64) -> (i64, usize) {
    let arcs = pd.arc_count();
    let mut parent: Vec<usize> = (0..=arcs).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut [usize], a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };

    let mut a_count = 0i64;
    for (i, x) in pd.crossings().iter().enumerate() {
        if state >> i & 1 == 0 {
            a_count += 1;
            union(&mut parent, x[0], x[1]);
            union(&mut parent, x[2], x[3]);
        } else {
            union(&mut parent, x[0], x[3]);
            union(&mut parent, x[1], x[2]);
        }
    }
    let mut roots = std::collections::HashSet::new();
    for arc in 1..=arcs {
        roots.insert(find(&mut parent, arc));
    }
    (a_count, roots.len())
}

/// Jones polynomial in the conventional variable `t`, exponents scaled by 4
/// (i.e. the polynomial lives in `t^(1/4)`): writhe-normalize the bracket by
/// `(-A)^(-3w)` and substitute `A = t^(-1/4)`.
pub fn jones(pd: &PDCode, writhe: i64) -> Result<LaurentPoly> {
    let bracket = kauffman_bracket(pd)?;
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let normalized = &LaurentPoly::term(-3 * writhe, sign) * &bracket;
    Ok(normalized.negate_exponents())
}

/// Knot determinant `|V(-1)|`, evaluated exactly.
///
/// At `A = zeta_8` the loop factor `delta` vanishes, so only single-loop
/// states survive and the bracket collapses to a Gaussian-integer sum
/// `G = sum i^(-b)` whose magnitude is the determinant.
pub fn determinant(pd: &PDCode) -> Result<u64> {
    let k = pd.crossing_count();
    if k > MAX_STATE_SUM_CROSSINGS {
        return Err(Error::TooManyCrossings(k));
    }
    if k == 0 {
        return Ok(1);
    }
    let states = 1u64 << k;
    let (re, im) = (0..states)
        .into_par_iter()
        .map(|state| {
            let (a_count, loops) = state_loops(pd, state);
            if loops != 1 {
                return (0i64, 0i64);
            }
            let b_count = k as i64 - a_count;
            match b_count.rem_euclid(4) {
                0 => (1, 0),
                1 => (0, -1), // i^-1
                2 => (-1, 0),
                _ => (0, 1),
            }
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    debug_assert!(re == 0 || im == 0, "bracket at zeta_8 must be a rotated integer");
    let norm = (re * re + im * im) as u64;
    let root = (norm as f64).sqrt().round() as u64;
    debug_assert_eq!(root * root, norm);
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::gauss_to_pd;

    #[test]
    fn empty_diagram_brackets_to_one() {
        assert_eq!(kauffman_bracket(&PDCode::empty()).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&PDCode::empty(), 0).unwrap(), LaurentPoly::one());
        assert_eq!(determinant(&PDCode::empty()).unwrap(), 1);
    }

    #[test]
    fn kink_brackets_match_hand_enumeration() {
        // positive kink: state A gives two loops (A delta), state B one loop
        // (A^-1); total -A^3
        let pos = gauss_to_pd(&"O1+ U1+".parse().unwrap()).unwrap();
        assert_eq!(kauffman_bracket(&pos).unwrap(), LaurentPoly::term(3, -1));
        let neg = gauss_to_pd(&"O1- U1-".parse().unwrap()).unwrap();
        assert_eq!(kauffman_bracket(&neg).unwrap(), LaurentPoly::term(-3, -1));
        // writhe-normalized, both are the unknot
        assert_eq!(jones(&pos, 1).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&neg, -1).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_bracket_matches_recursive_oracle() {
        let pd = gauss_to_pd(&crate::fixtures::trefoil_code()).unwrap();
        let fast = kauffman_bracket(&pd).unwrap();
        let slow = recursive_bracket(&pd);
        assert_eq!(fast, slow);
        assert_eq!(fast.term_count(), 3);
        let (_, states) = bracket_with_states(&pd).unwrap();
        assert_eq!(states, 8);
    }

    /// Skein-recursion oracle, independent of the state-sum path: resolve the
    /// first crossing both ways and recurse on explicit arc identifications.
    fn recursive_bracket(pd: &PDCode) -> LaurentPoly {
        fn go(crossings: &[[usize; 4]], merges: &mut Vec<(usize, usize)>) -> LaurentPoly {
            if let Some((first, rest)) = crossings.split_first() {
                let mut out = LaurentPoly::zero();
                for (exp, joins) in [
                    (1i64, [(first[0], first[1]), (first[2], first[3])]),
                    (-1, [(first[0], first[3]), (first[1], first[2])]),
                ] {
                    merges.push(joins[0]);
                    merges.push(joins[1]);
                    out += &(&LaurentPoly::term(exp, 1) * &go(rest, merges));
                    merges.pop();
                    merges.pop();
                }
                out
            } else {
                // count loops among all merged arcs
                let mut labels: Vec<usize> = merges.iter().flat_map(|&(a, b)| [a, b]).collect();
                labels.sort_unstable();
                labels.dedup();
                let idx = |x: usize| labels.binary_search(&x).unwrap();
                let mut parent: Vec<usize> = (0..labels.len()).collect();
                fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                for &(a, b) in merges.iter() {
                    let (ra, rb) = (find(&mut parent, idx(a)), find(&mut parent, idx(b)));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
                let mut roots = std::collections::HashSet::new();
                for i in 0..labels.len() {
                    roots.insert(find(&mut parent, i));
                }
                let delta = &LaurentPoly::term(2, -1) + &LaurentPoly::term(-2, -1);
                delta.pow(roots.len().saturating_sub(1))
            }
        }
        go(pd.crossings(), &mut Vec::new())
    }

    #[test]
    fn figure_eight_jones_is_palindromic() {
        let code = crate::fixtures::figure_eight_code();
        let pd = gauss_to_pd(&code).unwrap();
        let v = jones(&pd, code.writhe()).unwrap();
        assert_eq!(v, v.negate_exponents(), "figure-eight is amphichiral: {v}");
        assert_eq!(determinant(&pd).unwrap(), 5);
    }

    #[test]
    fn trefoil_jones_since_mirror_antisymmetry() {
        let code = crate::fixtures::trefoil_code();
        let pd = gauss_to_pd(&code).unwrap();
        let v = jones(&pd, code.writhe()).unwrap();
        assert_eq!(v.term_count(), 3);
        let mirror = code.mirror();
        let pdm = gauss_to_pd(&mirror).unwrap();
        let vm = jones(&pdm, mirror.writhe()).unwrap();
        assert_eq!(vm, v.negate_exponents());
        assert_ne!(vm, v);
        assert_eq!(determinant(&pd).unwrap(), 3);
        assert_eq!(determinant(&pdm).unwrap(), 3);
    }
}
