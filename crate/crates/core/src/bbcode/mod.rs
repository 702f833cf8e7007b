//! Coprime BB codes in the univariate ring `F2[z]/(z^N - 1)`.
//!
//! `H_X = [A B]` and `H_Z = [B^T A^T]` with `A`, `B` the circulants of `a(z)`
//! and `b(z)`. With `g = gcd(a, b, z^N - 1)` and `h = (z^N - 1)/g`:
//!
//! * `k = 2 deg g` and `r_X = r_Z = deg g`;
//! * the syndrome code `im(H_X)` is cyclic of dimension `N - deg g`;
//! * the relations `u H_X = 0` form the cyclic code generated by `h` (or its
//!   reciprocal, depending on the sector).
//!
//! All of these are checked when a code is built.

mod spec;

use std::fmt;

use num_integer::Integer;

pub use spec::CodeSpec;

use crate::gf2la::{circulant, RowSpace};
use crate::{BitVector, Error, GF2Matrix, PolyF2, Result};

/// Check type. `X` checks (`H_X`) detect Z errors; `Z` checks (`H_Z`) detect
/// X errors. Simulations default to [`Sector::X`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Sector {
    #[default]
    X,
    Z,
}

impl Sector {
    pub fn other(self) -> Sector {
        match self {
            Sector::X => Sector::Z,
            Sector::Z => Sector::X,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::X => "X",
            Sector::Z => "Z",
        })
    }
}

impl std::str::FromStr for Sector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Sector::X),
            "Z" | "z" => Ok(Sector::Z),
            other => Err(Error::InvalidArgument(format!("unknown sector {other:?}"))),
        }
    }
}

/// Which form of the check polynomial generated the rows of a syndrome-check
/// matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckConvention {
    /// Shifts of `reciprocal(h)`.
    Reciprocal,
    /// Shifts of `h` itself.
    Direct,
}

/// One structural identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// A constructed code. Immutable once built.
#[derive(Clone, Debug)]
pub struct BbCode {
    name: String,
    n: usize,
    ell: Option<usize>,
    mel: Option<usize>,
    a: PolyF2,
    b: PolyF2,
    hx: GF2Matrix,
    hz: GF2Matrix,
    g: PolyF2,
    h: PolyF2,
    k: usize,
    rank_hx: usize,
    rank_hz: usize,
    rx: GF2Matrix,
    rz: GF2Matrix,
    rx_convention: CheckConvention,
    rz_convention: CheckConvention,
    warnings: Vec<String>,
}

impl BbCode {
    /// Builds the code and verifies every structural identity; any violation
    /// is returned as [`Error::InvariantViolated`].
    pub fn build(spec: &CodeSpec) -> Result<Self> {
        let n = spec.n;
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        if n % 2 == 0 {
            return Err(Error::EvenLength(n));
        }
        match (spec.ell, spec.mel) {
            (Some(ell), Some(mel)) => {
                if ell * mel != n || ell.gcd(&mel) != 1 {
                    return Err(Error::BadFactorization { ell, mel, n });
                }
            }
            (None, None) => {}
            _ => {
                return Err(Error::InvalidArgument(
                    "ell and mel must be given together".into(),
                ))
            }
        }
        let a = PolyF2::from_exponents(n, &spec.a)?;
        let b = PolyF2::from_exponents(n, &spec.b)?;

        let modulus = PolyF2::cyclic_modulus(n);
        let g = a.gcd(&b)?.gcd(&modulus)?;
        let (h, rem) = modulus.divmod(&g)?;
        debug_assert!(rem.is_zero());
        let deg_g = g.degree().expect("gcd with z^N - 1 is nonzero");

        let ca = circulant(&a, n);
        let cb = circulant(&b, n);
        let hx = ca.hconcat(&cb)?;
        let hz = cb.transpose().hconcat(&ca.transpose())?;
        let rank_hx = hx.rank();
        let rank_hz = hz.rank();

        let (rx, rx_convention) = relation_matrix(&h, deg_g, n, &hx)?;
        let (rz, rz_convention) = relation_matrix(&h, deg_g, n, &hz)?;

        let mut warnings = Vec::new();
        for (label, p) in [("a", &a), ("b", &b)] {
            if p.weight() != 3 {
                warnings.push(format!(
                    "{label}(z) has weight {}, not a trinomial",
                    p.weight()
                ));
            }
        }
        if deg_g == 0 {
            warnings.push("g(z) = 1: degenerate code with k = 0 and no redundancy".into());
        }

        let code = BbCode {
            name: spec.display_name(),
            n,
            ell: spec.ell,
            mel: spec.mel,
            a,
            b,
            hx,
            hz,
            g,
            h,
            k: 2 * deg_g,
            rank_hx,
            rank_hz,
            rx,
            rz,
            rx_convention,
            rz_convention,
            warnings,
        };
        let failed: Vec<String> = code
            .verify()
            .into_iter()
            .filter(|c| !c.holds)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        if !failed.is_empty() {
            return Err(Error::InvariantViolated(failed.join("; ")));
        }
        Ok(code)
    }

    /// Shorthand for `build(&CodeSpec::new(n, a, b))`.
    pub fn from_exponents(n: usize, a: &[usize], b: &[usize]) -> Result<Self> {
        Self::build(&CodeSpec::new(n, a, b))
    }

    /// Re-derives every identity from the stored matrices.
    pub fn verify(&self) -> Vec<IdentityCheck> {
        let n = self.n;
        let deg_g = self.deg_g();
        let mut out = Vec::new();
        let mut check = |name, holds, detail: String| {
            out.push(IdentityCheck {
                name,
                holds,
                detail,
            })
        };

        let css = self
            .hx
            .mul(&self.hz.transpose())
            .map(|m| m.is_zero())
            .unwrap_or(false);
        check("css", css, "H_X H_Z^T = 0".into());

        let rank_hx = self.hx.rank();
        let rank_hz = self.hz.rank();
        let k_css = 2 * n - rank_hx.min(n) - rank_hz.min(n);
        check(
            "dimension",
            k_css == self.k && self.k == 2 * deg_g,
            format!(
                "2N - rank H_X - rank H_Z = {k_css}, 2 deg g = {}",
                2 * deg_g
            ),
        );
        check(
            "redundancy",
            n - rank_hx.min(n) == deg_g && n - rank_hz.min(n) == deg_g,
            format!(
                "r_X = {}, r_Z = {}, deg g = {deg_g}",
                n - rank_hx.min(n),
                n - rank_hz.min(n)
            ),
        );

        for (name, r, h) in [
            ("relations_x", &self.rx, &self.hx),
            ("relations_z", &self.rz, &self.hz),
        ] {
            let annihilates = r.mul(h).map(|m| m.is_zero()).unwrap_or(false);
            let rank = r.rank();
            check(
                name,
                annihilates && rank == deg_g,
                format!("R H = 0: {annihilates}, rank R = {rank}, deg g = {deg_g}"),
            );
        }

        check(
            "rate_equals_density",
            (n - rank_hx.min(n)) * 2 * n == self.k * n,
            format!(
                "r_X/N = {}/{n}, k/n = {}/{}",
                n - rank_hx.min(n),
                self.k,
                2 * n
            ),
        );

        for sector in [Sector::X, Sector::Z] {
            let image = RowSpace::new(&self.check_matrix(sector).transpose());
            let gen = self.syndrome_generator_matrix(sector);
            let inside = gen.rows().iter().all(|r| image.contains(r));
            check(
                "syndrome_code_cyclic",
                inside && image.dim() == gen.nrows(),
                format!(
                    "sector {sector}: dim im H = {}, N - deg g = {}",
                    image.dim(),
                    gen.nrows()
                ),
            );
        }
        out
    }

    /// Copy with one entry of `H_X` flipped and no re-verification. Only
    /// meant for negative controls.
    pub fn with_flipped_hx_bit(&self, row: usize, col: usize) -> BbCode {
        let mut out = self.clone();
        out.hx.flip(row, col);
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Block parameter `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of physical qubits `2N`.
    pub fn num_qubits(&self) -> usize {
        2 * self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> Option<usize> {
        self.ell
    }

    pub fn mel(&self) -> Option<usize> {
        self.mel
    }

    pub fn a(&self) -> &PolyF2 {
        &self.a
    }

    pub fn b(&self) -> &PolyF2 {
        &self.b
    }

    pub fn g(&self) -> &PolyF2 {
        &self.g
    }

    pub fn h(&self) -> &PolyF2 {
        &self.h
    }

    pub fn deg_g(&self) -> usize {
        self.g.degree().expect("g is nonzero")
    }

    pub fn hx(&self) -> &GF2Matrix {
        &self.hx
    }

    pub fn hz(&self) -> &GF2Matrix {
        &self.hz
    }

    pub fn rank_hx(&self) -> usize {
        self.rank_hx
    }

    pub fn rank_hz(&self) -> usize {
        self.rank_hz
    }

    pub fn r_x(&self) -> usize {
        self.n - self.rank_hx
    }

    pub fn r_z(&self) -> usize {
        self.n - self.rank_hz
    }

    pub fn is_degenerate(&self) -> bool {
        self.k == 0
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `H_X` for [`Sector::X`], `H_Z` for [`Sector::Z`].
    pub fn check_matrix(&self, sector: Sector) -> &GF2Matrix {
        match sector {
            Sector::X => &self.hx,
            Sector::Z => &self.hz,
        }
    }

    /// Rows generating the stabilizers that are invisible to
    /// `check_matrix(sector)`: `H_Z` for X checks and vice versa.
    pub fn stabilizer_matrix(&self, sector: Sector) -> &GF2Matrix {
        self.check_matrix(sector.other())
    }

    /// The `deg g x N` matrix `R` with `R H = 0`, used as the parity-check
    /// matrix of the syndrome code.
    pub fn syndrome_check_matrix(&self, sector: Sector) -> &GF2Matrix {
        match sector {
            Sector::X => &self.rx,
            Sector::Z => &self.rz,
        }
    }

    /// All `N` cyclic shifts of the first row of
    /// [`syndrome_check_matrix`](Self::syndrome_check_matrix): the same code,
    /// checked redundantly. Empty when `deg g = 0`.
    pub fn redundant_syndrome_check_matrix(&self, sector: Sector) -> GF2Matrix {
        let base = self.syndrome_check_matrix(sector);
        if base.nrows() == 0 {
            return GF2Matrix::zeros(0, self.n);
        }
        GF2Matrix::circulant(&PolyF2::from_bitvector(base.row(0)), self.n)
    }

    pub fn check_convention(&self, sector: Sector) -> CheckConvention {
        match sector {
            Sector::X => self.rx_convention,
            Sector::Z => self.rz_convention,
        }
    }

    /// Monic generator of the cyclic code `im(check_matrix(sector))`: `g` for
    /// `H_Z`, the reversed `g` for `H_X`.
    pub fn syndrome_generator(&self, sector: Sector) -> PolyF2 {
        match sector {
            Sector::Z => self.g.clone(),
            Sector::X => self
                .g
                .reciprocal(self.n)
                .gcd(&PolyF2::cyclic_modulus(self.n))
                .expect("modulus is nonzero"),
        }
    }

    /// `(N - deg g) x N` generator matrix of the syndrome code: shifts of
    /// [`syndrome_generator`](Self::syndrome_generator).
    pub fn syndrome_generator_matrix(&self, sector: Sector) -> GF2Matrix {
        let gen = self.syndrome_generator(sector);
        let dim = self.n - self.deg_g();
        let rows = (0..dim)
            .map(|i| {
                gen.mul_mod(&PolyF2::monomial(i), self.n)
                    .to_bitvector(self.n)
            })
            .collect();
        GF2Matrix::from_rows(self.n, rows).expect("row length is N")
    }

    /// Syndrome of an error under `check_matrix(sector)`.
    pub fn syndrome(&self, sector: Sector, e: &BitVector) -> BitVector {
        self.check_matrix(sector).matvec(e)
    }

    pub fn report(&self) -> CodeReport {
        code_report(self)
    }
}

/// First `deg g` shifts of `reciprocal(h)`, falling back to `h` when the
/// reciprocal rows do not annihilate `check`.
fn relation_matrix(
    h: &PolyF2,
    deg_g: usize,
    n: usize,
    check: &GF2Matrix,
) -> Result<(GF2Matrix, CheckConvention)> {
    let shifts = |p: &PolyF2| {
        let rows = (0..deg_g)
            .map(|i| p.mul_mod(&PolyF2::monomial(i), n).to_bitvector(n))
            .collect();
        GF2Matrix::from_rows(n, rows).expect("row length is N")
    };
    for (p, conv) in [
        (h.reciprocal(n), CheckConvention::Reciprocal),
        (h.clone(), CheckConvention::Direct),
    ] {
        let r = shifts(&p);
        if r.mul(check)?.is_zero() {
            return Ok((r, conv));
        }
    }
    Err(Error::InvariantViolated(
        "neither h nor its reciprocal annihilates the check matrix".into(),
    ))
}

/// A reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: usize,
    pub den: usize,
}

impl Ratio {
    pub fn new(num: usize, den: usize) -> Self {
        assert!(den > 0);
        let d = num.gcd(&den).max(1);
        if num == 0 {
            return Ratio { num: 0, den: 1 };
        }
        Ratio {
            num: num / d,
            den: den / d,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Summary of a code's parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeReport {
    pub name: String,
    pub n_qubits: usize,
    pub k: usize,
    pub n_block: usize,
    pub deg_g: usize,
    pub r_x: usize,
    pub r_z: usize,
    pub rate: Ratio,
    pub density: Ratio,
    pub rate_equals_density: bool,
    pub g: PolyF2,
    pub h: PolyF2,
    pub warnings: Vec<String>,
}

pub fn code_report(code: &BbCode) -> CodeReport {
    let rate = Ratio::new(code.k(), code.num_qubits());
    let density = Ratio::new(code.r_x(), code.n());
    CodeReport {
        name: code.name().to_string(),
        n_qubits: code.num_qubits(),
        k: code.k(),
        n_block: code.n(),
        deg_g: code.deg_g(),
        r_x: code.r_x(),
        r_z: code.r_z(),
        rate,
        density,
        rate_equals_density: rate == density,
        g: code.g().clone(),
        h: code.h().clone(),
        warnings: code.warnings().to_vec(),
    }
}

impl CodeReport {
    pub const CSV_HEADER: &'static str =
        "name,N,n,k,deg_g,r_X,r_Z,rate,density,rate_equals_density";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.name,
            self.n_block,
            self.n_qubits,
            self.k,
            self.deg_g,
            self.r_x,
            self.r_z,
            self.rate,
            self.density,
            self.rate_equals_density
        )
    }

    /// One-line summary, e.g. `[[42,18,?]], deg g=9, r=9, rate=density=3/7`.
    pub fn headline(&self) -> String {
        let rd = if self.rate_equals_density {
            format!("rate=density={}", self.rate)
        } else {
            format!("rate={} density={}", self.rate, self.density)
        };
        format!(
            "[[{},{},?]], deg g={}, r={}, {rd}",
            self.n_qubits, self.k, self.deg_g, self.r_x
        )
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.headline())?;
        writeln!(f, "N={}", self.n_block)?;
        writeln!(f, "n={}", self.n_qubits)?;
        writeln!(f, "k={}", self.k)?;
        writeln!(f, "deg_g={}", self.deg_g)?;
        writeln!(f, "r_X={}", self.r_x)?;
        writeln!(f, "r_Z={}", self.r_z)?;
        writeln!(f, "rate={}", self.rate)?;
        writeln!(f, "density={}", self.density)?;
        writeln!(f, "rate_equals_density={}", self.rate_equals_density)?;
        writeln!(f, "g={}", self.g.exponent_list())?;
        writeln!(f, "h={}", self.h.exponent_list())?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code1_parameters() {
        let code = BbCode::from_exponents(21, &[0, 3, 9], &[0, 3, 9]).unwrap();
        assert_eq!(
            (code.k(), code.r_x(), code.r_z(), code.num_qubits()),
            (18, 9, 9, 42)
        );
        assert_eq!(code.rank_hx(), 12);
        let rep = code.report();
        assert_eq!(rep.rate, Ratio::new(3, 7));
        assert_eq!(rep.density, Ratio::new(3, 7));
        assert_eq!(
            rep.headline(),
            "[[42,18,?]], deg g=9, r=9, rate=density=3/7"
        );
        assert!(code.warnings().is_empty());
    }

    #[test]
    fn code2_parameters() {
        let code = BbCode::from_exponents(63, &[0, 33, 57], &[0, 6, 39]).unwrap();
        assert_eq!((code.k(), code.r_x(), code.num_qubits()), (30, 15, 126));
        assert_eq!(code.report().rate, Ratio::new(5, 21));
        assert_eq!(code.report().density, Ratio::new(5, 21));
    }

    #[test]
    fn unit_generators_are_degenerate() {
        let code = BbCode::from_exponents(15, &[0], &[0]).unwrap();
        assert_eq!((code.k(), code.r_x(), code.deg_g()), (0, 0, 0));
        assert!(code.is_degenerate());
        assert_eq!(code.syndrome_check_matrix(Sector::X).nrows(), 0);
        assert_eq!(code.report().rate.to_string(), "0");
        assert!(code.warnings().iter().any(|w| w.contains("degenerate")));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            BbCode::from_exponents(18, &[0, 1], &[0, 2]).unwrap_err(),
            Error::EvenLength(18)
        );
        let bad = CodeSpec::new(21, &[0, 3, 9], &[0, 3, 9]).with_factors(3, 5);
        assert!(matches!(
            BbCode::build(&bad),
            Err(Error::BadFactorization { .. })
        ));
        let not_coprime = CodeSpec::new(9, &[0, 1, 2], &[0, 3, 5]).with_factors(3, 3);
        assert!(matches!(
            BbCode::build(&not_coprime),
            Err(Error::BadFactorization { .. })
        ));
        let ok = CodeSpec::new(21, &[0, 3, 9], &[0, 3, 9]).with_factors(3, 7);
        assert!(BbCode::build(&ok).is_ok());
    }

    #[test]
    fn relation_rows_match_left_nullspace() {
        let code = BbCode::from_exponents(21, &[0, 3, 9], &[0, 3, 9]).unwrap();
        for sector in [Sector::X, Sector::Z] {
            let r = code.syndrome_check_matrix(sector);
            assert_eq!((r.nrows(), r.ncols()), (9, 21));
            let null = code.check_matrix(sector).left_nullspace_basis();
            assert_eq!(null.nrows(), 9);
            let span_r = RowSpace::new(r);
            assert!(null.rows().iter().all(|v| span_r.contains(v)));
            let span_null = RowSpace::new(&null);
            assert!(r.rows().iter().all(|v| span_null.contains(v)));
        }
    }

    #[test]
    fn tampering_breaks_css() {
        let code = BbCode::from_exponents(21, &[0, 3, 9], &[0, 3, 9]).unwrap();
        let bad = code.with_flipped_hx_bit(0, 1);
        let css = bad.verify().into_iter().find(|c| c.name == "css").unwrap();
        assert!(!css.holds);
        assert!(code.verify().iter().all(|c| c.holds));
    }
}
