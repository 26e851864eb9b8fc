//! Lie superalgebras given by structure constants.

use std::fmt;

use num_traits::{One, Zero};

use crate::context::Parity;
use crate::error::{Error, Result};
use crate::linalg::{rank, realify, solve};
use crate::scalar::GaussianRational;

pub type Vector = Vec<GaussianRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSuperAlgebra {
    names: Vec<String>,
    parities: Vec<Parity>,
    /// `constants[i][j]` = coordinates of `[b_i, b_j]`.
    constants: Vec<Vec<Vector>>,
}

fn sign(p: Parity, q: Parity) -> GaussianRational {
    if p.koszul(q) {
        -GaussianRational::one()
    } else {
        GaussianRational::one()
    }
}

fn zero_vec(n: usize) -> Vector {
    vec![GaussianRational::zero(); n]
}

fn axpy(acc: &mut Vector, a: &GaussianRational, x: &[GaussianRational]) {
    for (y, x) in acc.iter_mut().zip(x) {
        *y += &(a * x);
    }
}

/// Render `Σ c_k b_k` with explicit coefficients, or `0`.
pub fn render_combination(names: &[String], v: &[GaussianRational]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative_like();
        let shown = if neg && !out.is_empty() { -c.clone() } else { c.clone() };
        let coeff = if shown.is_compound() { format!("({shown})") } else { shown.to_string() };
        if !out.is_empty() {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format!("{coeff}*{name}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl LieSuperAlgebra {
    /// Build from the brackets listed in `table` (`(i, j, [b_i, b_j])`);
    /// the transposed entries are filled in by graded antisymmetry and every
    /// unlisted bracket is zero.
    pub fn from_table(names: &[&str], parities: &[Parity], table: &[(usize, usize, Vector)]) -> Result<Self> {
        let n = names.len();
        if parities.len() != n {
            return Err(Error::Shape(format!("{} parities for {n} basis elements", parities.len())));
        }
        let mut constants = vec![vec![zero_vec(n); n]; n];
        let mut set = vec![vec![false; n]; n];
        for (i, j, v) in table {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || v.len() != n {
                return Err(Error::Shape(format!("bracket entry ({i},{j}) out of range")));
            }
            let t: Vector = v.iter().map(|c| -(&sign(parities[i], parities[j]) * c)).collect();
            for (a, b, w) in [(i, j, v.clone()), (j, i, t)] {
                if set[a][b] && constants[a][b] != w {
                    return Err(Error::Malformed(format!("bracket [{}, {}] given inconsistently", names[a], names[b])));
                }
                constants[a][b] = w;
                set[a][b] = true;
            }
        }
        LieSuperAlgebra::new(names.iter().map(|s| s.to_string()).collect(), parities.to_vec(), constants)
    }

    /// Validates graded antisymmetry and parity consistency.
    pub fn new(names: Vec<String>, parities: Vec<Parity>, constants: Vec<Vec<Vector>>) -> Result<Self> {
        let n = names.len();
        if parities.len() != n || constants.len() != n || constants.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Shape("structure constants must be n×n×n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let s = sign(parities[i], parities[j]);
                let anti: Vector = constants[j][i].iter().map(|c| -(&s * c)).collect();
                if constants[i][j] != anti {
                    return Err(Error::Malformed(format!("[{}, {}] violates graded antisymmetry", names[i], names[j])));
                }
                let p = parities[i] + parities[j];
                if let Some(k) = (0..n).find(|&k| !constants[i][j][k].is_zero() && parities[k] != p) {
                    return Err(Error::Malformed(format!(
                        "[{}, {}] has a component on `{}` of the wrong parity",
                        names[i], names[j], names[k]
                    )));
                }
            }
        }
        Ok(LieSuperAlgebra { names, parities, constants })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn structure(&self, i: usize, j: usize) -> &[GaussianRational] {
        &self.constants[i][j]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::NotFound(format!("basis element `{name}`")))
    }

    /// Coordinates of a single basis element.
    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = zero_vec(self.dim());
        v[i] = GaussianRational::one();
        v
    }

    /// Bilinear extension of the structure constants (scalars are ordinary
    /// complex numbers).
    pub fn bracket(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                axpy(&mut out, &(&x[i] * &y[j]), &self.constants[i][j]);
            }
        }
        out
    }

    /// First basis triple violating the graded Jacobi identity
    /// `(−1)^{|a||c|}[a,[b,c]] + (−1)^{|b||a|}[b,[c,a]] + (−1)^{|c||b|}[c,[a,b]] = 0`,
    /// with the defect.
    pub fn jacobi_defect(&self) -> Option<((usize, usize, usize), Vector)> {
        let n = self.dim();
        let p = &self.parities;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ea, eb, ec) = (self.basis_vector(a), self.basis_vector(b), self.basis_vector(c));
                    let mut acc = zero_vec(n);
                    axpy(&mut acc, &sign(p[a], p[c]), &self.bracket(&ea, &self.bracket(&eb, &ec)));
                    axpy(&mut acc, &sign(p[b], p[a]), &self.bracket(&eb, &self.bracket(&ec, &ea)));
                    axpy(&mut acc, &sign(p[c], p[b]), &self.bracket(&ec, &self.bracket(&ea, &eb)));
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Some(((a, b, c), acc));
                    }
                }
            }
        }
        None
    }

    pub fn check_super_jacobi(&self) -> bool {
        self.jacobi_defect().is_none()
    }

    /// The table in the text format, one `bracket(b_i, b_j) = …` row per
    /// unordered pair `i ≤ j`.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                out.push_str(&format!(
                    "bracket({}, {}) = {}\n",
                    self.names[i],
                    self.names[j],
                    render_combination(&self.names, &self.constants[i][j])
                ));
            }
        }
        out
    }

    pub fn render(&self, v: &[GaussianRational]) -> String {
        render_combination(&self.names, v)
    }

    /// Does the linear map sending `b_i` to `images[i]` (coordinates in
    /// `target`) respect brackets? Returns the first failing pair.
    pub fn homomorphism_defect(&self, target: &LieSuperAlgebra, images: &[Vector]) -> Option<(usize, usize)> {
        let map = |v: &[GaussianRational]| {
            let mut out = zero_vec(target.dim());
            for (c, img) in v.iter().zip(images) {
                axpy(&mut out, c, img);
            }
            out
        };
        for i in 0..self.dim() {
            for j in i..self.dim() {
                if map(&self.constants[i][j]) != target.bracket(&images[i], &images[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl fmt::Display for LieSuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_table())
    }
}

/// Vectors of a Lie superalgebra taken with real scalars.
#[derive(Clone, Debug)]
pub struct RealSpan {
    ambient: LieSuperAlgebra,
    names: Vec<String>,
    vectors: Vec<Vector>,
}

/// A bracket of two span vectors that has no real expansion in the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanDefect {
    pub left: String,
    pub right: String,
    pub bracket: Vector,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// `(left, right, real coordinates in the span)` for brackets inside.
    pub inside: Vec<(String, String, Vec<GaussianRational>)>,
    pub defects: Vec<SpanDefect>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl RealSpan {
    pub fn new(ambient: &LieSuperAlgebra, names: &[&str], vectors: Vec<Vector>) -> Result<Self> {
        if names.len() != vectors.len() || vectors.iter().any(|v| v.len() != ambient.dim()) {
            return Err(Error::Shape("span vectors do not match the ambient basis".into()));
        }
        let real: Vec<_> = vectors.iter().map(|v| realify(v)).collect();
        if rank(&real, 2 * ambient.dim()) < vectors.len() {
            return Err(Error::DependentBasis);
        }
        Ok(RealSpan { ambient: ambient.clone(), names: names.iter().map(|s| s.to_string()).collect(), vectors })
    }

    pub fn ambient(&self) -> &LieSuperAlgebra {
        &self.ambient
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Bracket every pair and try to expand it with real coefficients.
    pub fn bracket_span_closure(&self) -> ClosureReport {
        let cols: Vec<_> = self.vectors.iter().map(|v| realify(v)).collect();
        let mut inside = Vec::new();
        let mut defects = Vec::new();
        for i in 0..self.vectors.len() {
            for j in i..self.vectors.len() {
                let b = self.ambient.bracket(&self.vectors[i], &self.vectors[j]);
                match solve(&cols, &realify(&b)) {
                    Some(x) => {
                        inside.push((self.names[i].clone(), self.names[j].clone(), x.into_iter().map(GaussianRational::real).collect()))
                    }
                    None => defects.push(SpanDefect { left: self.names[i].clone(), right: self.names[j].clone(), bracket: b }),
                }
            }
        }
        ClosureReport { inside, defects }
    }

    /// Do the vectors span the ambient algebra over the complex scalars?
    pub fn complexified_span_check(&self) -> bool {
        rank(&self.vectors, self.ambient.dim()) == self.ambient.dim()
    }
}

/// Structure constants of the span of `vectors` under `bracket`, solved
/// exactly in the given basis.
pub fn structure_constants<T>(
    names: &[&str],
    parities: &[Parity],
    vectors: &[T],
    coords: impl Fn(&T) -> Vec<(usize, GaussianRational)>,
    dim: usize,
    bracket: impl Fn(&T, &T) -> Result<T>,
    render: impl Fn(&T) -> String,
) -> Result<LieSuperAlgebra> {
    let dense = |t: &T| {
        let mut v = zero_vec(dim);
        for (k, c) in coords(t) {
            v[k] = c;
        }
        v
    };
    let cols: Vec<Vector> = vectors.iter().map(dense).collect();
    if rank(&cols, dim) < cols.len() {
        return Err(Error::DependentBasis);
    }
    let mut table = Vec::new();
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let b = bracket(&vectors[i], &vectors[j])?;
            let x = solve(&cols, &dense(&b)).ok_or_else(|| Error::OutsideSpan(format!("[{}, {}] = {}", names[i], names[j], render(&b))))?;
            table.push((i, j, x));
        }
    }
    LieSuperAlgebra::from_table(names, parities, &table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn sl11() -> LieSuperAlgebra {
        LieSuperAlgebra::from_table(&["C", "E", "F"], &[Parity::Even, Parity::Odd, Parity::Odd], &[(1, 2, vec![g(1), g(0), g(0)])]).unwrap()
    }

    #[test]
    fn sl11_is_jacobi() {
        let a = sl11();
        assert!(a.check_super_jacobi());
        assert_eq!(a.bracket(&a.basis_vector(2), &a.basis_vector(1)), vec![g(1), g(0), g(0)]);
        assert_eq!(
            a.render_table(),
            "bracket(C, C) = 0\nbracket(C, E) = 0\nbracket(C, F) = 0\nbracket(E, E) = 0\nbracket(E, F) = 1*C\nbracket(F, F) = 0\n"
        );
    }

    #[test]
    fn perturbed_table_fails_jacobi() {
        let a = LieSuperAlgebra::from_table(
            &["C", "E", "F"],
            &[Parity::Even, Parity::Odd, Parity::Odd],
            &[(1, 2, vec![g(1), g(0), g(0)]), (0, 1, vec![g(0), g(1), g(0)])],
        )
        .unwrap();
        assert!(a.jacobi_defect().is_some());
    }

    #[test]
    fn construction_validates() {
        let bad = LieSuperAlgebra::from_table(&["C", "E"], &[Parity::Even, Parity::Odd], &[(0, 1, vec![g(1), g(0)])]);
        assert!(matches!(bad, Err(Error::Malformed(_))));
        let odd_sym = LieSuperAlgebra::from_table(&["E"], &[Parity::Odd], &[(0, 0, vec![g(0)])]);
        assert!(odd_sym.is_ok());
    }

    #[test]
    fn real_spans() {
        let a = sl11();
        let i = GaussianRational::i();
        let ic = vec![i.clone(), g(0), g(0)];
        let printed =
            RealSpan::new(&a, &["iC", "U", "V"], vec![ic.clone(), vec![g(0), g(1), i.clone()], vec![g(0), i.clone(), g(-1)]]).unwrap();
        let rep = printed.bracket_span_closure();
        assert_eq!(rep.defects.len(), 1);
        assert_eq!(rep.defects[0].bracket, vec![g(-2), g(0), g(0)]);
        assert!(!printed.complexified_span_check());
        let variant = RealSpan::new(&a, &["iC", "U", "V"], vec![ic, vec![g(0), g(1), i.clone()], vec![g(0), g(1), -i.clone()]]).unwrap();
        assert!(variant.bracket_span_closure().closed());
        assert!(variant.complexified_span_check());
        assert!(matches!(RealSpan::new(&a, &["a", "b"], vec![vec![g(1), g(0), g(0)], vec![g(2), g(0), g(0)]]), Err(Error::DependentBasis)));
    }
}
