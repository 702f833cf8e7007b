//! Search for a small coprime BB code whose syndrome code has distance 2.

use crate::bbcode::CodeSpec;
use crate::simkit::theorems::lightest_logical;
use crate::{BbCode, PolyF2, Result, Sector};

/// Block lengths tried in order, with their coprime factorisations.
pub const BASELINE_LENGTHS: [(usize, usize, usize); 2] = [(15, 3, 5), (21, 3, 7)];

/// `g` generates a cyclic code of length `n` containing a weight-2 word,
/// i.e. `g | 1 + z^j` for some `0 < j < n`.
pub fn has_weight_two_word(g: &PolyF2, n: usize) -> bool {
    (1..n).any(|j| g.divides(&PolyF2::from_support([0, j])))
}

/// First trinomial pair `a = 1 + z^i + z^j`, `b = 1 + z^k + z^l`
/// (lexicographic in `(i, j, k, l)`, lengths in [`BASELINE_LENGTHS`] order)
/// with `deg g >= 2`, syndrome distance 2 and no logical operator of weight
/// `<= 2`.
pub fn search_baseline() -> Result<Option<CodeSpec>> {
    for (n, ell, mel) in BASELINE_LENGTHS {
        let modulus = PolyF2::cyclic_modulus(n);
        for (i, j) in trinomial_exponents(n) {
            let a = PolyF2::from_support([0, i, j]);
            let ga = a.gcd(&modulus)?;
            if ga.degree().unwrap_or(0) < 2 {
                continue;
            }
            for (k, l) in trinomial_exponents(n) {
                let b = PolyF2::from_support([0, k, l]);
                let g = ga.gcd(&b)?;
                if g.degree().unwrap_or(0) < 2 || !has_weight_two_word(&g, n) {
                    continue;
                }
                let spec = CodeSpec::new(n, &[0, i, j], &[0, k, l])
                    .named("baseline")
                    .with_factors(ell, mel);
                let code = BbCode::build(&spec)?;
                if lightest_logical(&code, Sector::X, 2).is_none() {
                    return Ok(Some(spec));
                }
            }
        }
    }
    Ok(None)
}

fn trinomial_exponents(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}
