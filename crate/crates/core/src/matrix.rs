//! Block-graded matrices over [`SuperPoly`] and parametrised matrix families.

use std::fmt;

use num_traits::{One, Zero};

use crate::conj::{conjugate, ConjugationMode};
use crate::context::{check_same, Context, Ctx, Parity};
use crate::error::{Error, Result};
use crate::maps::{Derivation, Morphism};
use crate::poly::SuperPoly;
use crate::scalar::GaussianRational;

/// Row and column parities. Square formats used with [`SuperMatrix::inverse`]
/// and [`SuperMatrix::berezinian`] list the even indices first: `(p|q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFormat {
    rows: Vec<Parity>,
    cols: Vec<Parity>,
}

impl BlockFormat {
    pub fn new(rows: Vec<Parity>, cols: Vec<Parity>) -> Self {
        BlockFormat { rows, cols }
    }

    /// The square `(p|q)` format.
    pub fn square(p: usize, q: usize) -> Self {
        let v: Vec<Parity> = std::iter::repeat_n(Parity::Even, p).chain(std::iter::repeat_n(Parity::Odd, q)).collect();
        BlockFormat { rows: v.clone(), cols: v }
    }

    pub fn rows(&self) -> &[Parity] {
        &self.rows
    }

    pub fn cols(&self) -> &[Parity] {
        &self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `(p, q)` for a square format with even indices first.
    pub fn split(&self) -> Result<(usize, usize)> {
        if !self.is_square() {
            return Err(Error::Shape(format!("format {self} is not square")));
        }
        let p = self.rows.iter().take_while(|x| !x.is_odd()).count();
        if self.rows[p..].iter().any(|x| !x.is_odd()) {
            return Err(Error::Shape(format!("format {self} does not list even indices first")));
        }
        Ok((p, self.rows.len() - p))
    }
}

impl fmt::Display for BlockFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let count = |v: &[Parity], odd: bool| v.iter().filter(|x| x.is_odd() == odd).count();
        if self.is_square() {
            write!(f, "({}|{})", count(&self.rows, false), count(&self.rows, true))
        } else {
            write!(
                f,
                "({}|{})x({}|{})",
                count(&self.rows, false),
                count(&self.rows, true),
                count(&self.cols, false),
                count(&self.cols, true)
            )
        }
    }
}

type Grid = Vec<Vec<SuperPoly>>;

#[derive(Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    ctx: Ctx,
    format: BlockFormat,
    entries: Grid,
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperMatrix{}{self}", self.format)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            f.write_str(&cells.join(", "))?;
        }
        f.write_str("]")
    }
}

impl SuperMatrix {
    pub fn new(ctx: &Ctx, format: BlockFormat, entries: Grid) -> Result<Self> {
        if entries.len() != format.rows.len() || entries.iter().any(|r| r.len() != format.cols.len()) {
            return Err(Error::Shape(format!("entry grid does not match format {format}")));
        }
        for e in entries.iter().flatten() {
            check_same(e.context(), ctx)?;
        }
        Ok(SuperMatrix { ctx: ctx.clone(), format, entries })
    }

    pub fn identity(ctx: &Ctx, format: BlockFormat) -> Result<Self> {
        if !format.is_square() {
            return Err(Error::Shape(format!("identity needs a square format, got {format}")));
        }
        let n = format.rows.len();
        let entries = (0..n).map(|i| (0..n).map(|j| if i == j { SuperPoly::one(ctx) } else { SuperPoly::zero(ctx) }).collect()).collect();
        Ok(SuperMatrix { ctx: ctx.clone(), format, entries })
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn format(&self) -> &BlockFormat {
        &self.format
    }

    pub fn entry(&self, i: usize, j: usize) -> &SuperPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<SuperPoly>] {
        &self.entries
    }

    /// First entry whose parity differs from `row + col`, if any.
    pub fn homogeneity_defect(&self) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.has_parity(self.format.rows[i] + self.format.cols[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity_defect().is_none()
    }

    fn require_homogeneous(&self) -> Result<()> {
        match self.homogeneity_defect() {
            None => Ok(()),
            Some((i, j)) => Err(Error::Parity(format!("entry ({i},{j}) = `{}` breaks format {}", self.entries[i][j], self.format))),
        }
    }

    pub fn matmul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        check_same(&self.ctx, &other.ctx)?;
        if self.format.cols != other.format.rows {
            return Err(Error::Shape(format!("cannot compose {} with {}", self.format, other.format)));
        }
        Ok(SuperMatrix {
            ctx: self.ctx.clone(),
            format: BlockFormat::new(self.format.rows.clone(), other.format.cols.clone()),
            entries: grid_mul(&self.ctx, &self.entries, &other.entries)?,
        })
    }

    pub fn sub(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        check_same(&self.ctx, &other.ctx)?;
        if self.format != other.format {
            return Err(Error::Shape(format!("cannot subtract {} from {}", other.format, self.format)));
        }
        Ok(SuperMatrix { ctx: self.ctx.clone(), format: self.format.clone(), entries: grid_sub(&self.entries, &other.entries)? })
    }

    pub fn is_identity(&self) -> bool {
        self.format.is_square()
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() }))
    }

    /// Two-sided inverse by block elimination on the `(p|q)` blocks.
    pub fn inverse(&self) -> Result<SuperMatrix> {
        self.require_homogeneous()?;
        let (p, q) = self.format.split()?;
        let ctx = &self.ctx;
        let (a, b, c, d) = self.blocks(p);
        let entries = if q == 0 {
            even_inverse(ctx, &a)?
        } else if p == 0 {
            even_inverse(ctx, &d)?
        } else {
            let d_inv = even_inverse(ctx, &d)?;
            let bd = grid_mul(ctx, &b, &d_inv)?;
            let s = grid_sub(&a, &grid_mul(ctx, &bd, &c)?)?;
            let s_inv = even_inverse(ctx, &s)?;
            let dc = grid_mul(ctx, &d_inv, &c)?;
            let top_right = grid_neg(&grid_mul(ctx, &s_inv, &bd)?);
            let bottom_left = grid_neg(&grid_mul(ctx, &dc, &s_inv)?);
            let bottom_right = grid_add(&d_inv, &grid_mul(ctx, &grid_mul(ctx, &dc, &s_inv)?, &bd)?)?;
            let mut out = Vec::with_capacity(p + q);
            for i in 0..p {
                out.push(s_inv[i].iter().chain(&top_right[i]).cloned().collect());
            }
            for i in 0..q {
                out.push(bottom_left[i].iter().chain(&bottom_right[i]).cloned().collect());
            }
            out
        };
        Ok(SuperMatrix { ctx: ctx.clone(), format: self.format.clone(), entries })
    }

    /// `det(A − B D⁻¹ C) · det(D)⁻¹`.
    pub fn berezinian(&self) -> Result<SuperPoly> {
        self.require_homogeneous()?;
        let (p, q) = self.format.split()?;
        let ctx = &self.ctx;
        let (a, b, c, d) = self.blocks(p);
        if q == 0 {
            return even_det(ctx, &a);
        }
        let det_d = even_det(ctx, &d)?;
        let det_d_inv = det_d.invert_even().map_err(|_| Error::NotInvertible(format!("odd-odd block determinant `{det_d}`")))?;
        if p == 0 {
            return Ok(det_d_inv);
        }
        let d_inv = even_inverse(ctx, &d)?;
        let s = grid_sub(&a, &grid_mul(ctx, &grid_mul(ctx, &b, &d_inv)?, &c)?)?;
        even_det(ctx, &s)?.mul(&det_d_inv)
    }

    fn blocks(&self, p: usize) -> (Grid, Grid, Grid, Grid) {
        let e = &self.entries;
        let part =
            |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Grid { rows.map(|i| e[i][cols.clone()].to_vec()).collect() };
        let n = e.len();
        (part(0..p, 0..p), part(0..p, p..n), part(p..n, 0..p), part(p..n, p..n))
    }

    /// Apply a morphism to every entry.
    pub fn map(&self, f: &Morphism) -> Result<SuperMatrix> {
        check_same(&self.ctx, f.source())?;
        let entries = self.entries.iter().map(|r| r.iter().map(|e| f.apply(e)).collect()).collect::<Result<_>>()?;
        Ok(SuperMatrix { ctx: f.target().clone(), format: self.format.clone(), entries })
    }

    /// Apply a derivation to every entry.
    pub fn derive(&self, x: &Derivation) -> Result<SuperMatrix> {
        let entries = self.entries.iter().map(|r| r.iter().map(|e| x.apply(e)).collect()).collect::<Result<_>>()?;
        Ok(SuperMatrix { ctx: self.ctx.clone(), format: self.format.clone(), entries })
    }

    /// Entrywise conjugation.
    pub fn conjugate(&self, mode: ConjugationMode) -> Result<SuperMatrix> {
        let entries = self.entries.iter().map(|r| r.iter().map(|e| conjugate(e, mode)).collect()).collect::<Result<_>>()?;
        Ok(SuperMatrix { ctx: self.ctx.clone(), format: self.format.clone(), entries })
    }

    /// Entries as constants, if every entry is one.
    pub fn as_constants(&self) -> Option<Vec<Vec<GaussianRational>>> {
        self.entries.iter().map(|r| r.iter().map(SuperPoly::as_constant).collect()).collect()
    }
}

fn grid_mul(ctx: &Ctx, a: &Grid, b: &Grid) -> Result<Grid> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = SuperPoly::zero(ctx);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&row[k].mul(&b[k][j])?)?;
                        }
                    }
                    Ok(acc)
                })
                .collect()
        })
        .collect()
}

fn grid_add(a: &Grid, b: &Grid) -> Result<Grid> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect()).collect()
}

fn grid_sub(a: &Grid, b: &Grid) -> Result<Grid> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect()).collect()
}

fn grid_neg(a: &Grid) -> Grid {
    a.iter().map(|r| r.iter().map(SuperPoly::neg).collect()).collect()
}

/// Cofactor determinant of a square grid of even (hence commuting) entries.
fn even_det(ctx: &Ctx, m: &Grid) -> Result<SuperPoly> {
    match m.len() {
        0 => Ok(SuperPoly::one(ctx)),
        1 => Ok(m[0][0].clone()),
        n => {
            let mut acc = SuperPoly::zero(ctx);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Grid =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect()).collect();
                let term = m[0][j].mul(&even_det(ctx, &minor)?)?;
                acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            Ok(acc)
        }
    }
}

/// Adjugate over determinant for a grid of even entries.
fn even_inverse(ctx: &Ctx, m: &Grid) -> Result<Grid> {
    if let Some(e) = m.iter().flatten().find(|e| !e.is_even()) {
        return Err(Error::NotEven(e.to_string()));
    }
    let n = m.len();
    let det = even_det(ctx, m)?;
    let det_inv = det.invert_even().map_err(|_| Error::NotInvertible(format!("block determinant `{det}` has no unit body")))?;
    if n == 1 {
        return Ok(vec![vec![det_inv]]);
    }
    // Adjugate: entry (i, j) is the signed minor with row j and column i removed.
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Grid = m
                        .iter()
                        .enumerate()
                        .filter(|&(r, _)| r != j)
                        .map(|(_, row)| row.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, e)| e.clone()).collect())
                        .collect();
                    let cof = even_det(ctx, &minor)?.mul(&det_inv)?;
                    Ok(if (i + j) % 2 == 0 { cof } else { cof.neg() })
                })
                .collect()
        })
        .collect()
}

/// Matrices `T(p)` parametrised by coordinates `p`, where each coordinate can
/// be read back from a fixed entry of `T(p)`.
#[derive(Clone, Debug)]
pub struct MatrixFamily {
    params: Ctx,
    template: SuperMatrix,
    readout: Vec<(usize, usize)>,
}

/// Outcome of a family closure test. `defect` is `T(p'') − product` (or the
/// inverse analogue) and is zero when the family is closed.
#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub composed: Morphism,
    pub defect: SuperMatrix,
}

impl ClosureOutcome {
    pub fn closed(&self) -> bool {
        self.defect.entries.iter().flatten().all(SuperPoly::is_zero)
    }
}

impl MatrixFamily {
    /// `readout[k]` is the entry holding the `k`-th parameter; the template
    /// must literally contain that generator there.
    pub fn new(template: SuperMatrix, readout: Vec<(usize, usize)>) -> Result<Self> {
        let params = template.ctx.clone();
        if readout.len() != params.len() {
            return Err(Error::Shape(format!("{} readout positions for {} parameters", readout.len(), params.len())));
        }
        for (k, &(i, j)) in readout.iter().enumerate() {
            let cell = template.entries.get(i).and_then(|r| r.get(j));
            if cell != Some(&SuperPoly::gen(&params, k)) {
                return Err(Error::Malformed(format!("entry ({i},{j}) does not read out `{}`", params.generator(k).name)));
            }
        }
        template.require_homogeneous()?;
        Ok(MatrixFamily { params, template, readout })
    }

    pub fn params(&self) -> &Ctx {
        &self.params
    }

    pub fn template(&self) -> &SuperMatrix {
        &self.template
    }

    pub fn readout(&self) -> &[(usize, usize)] {
        &self.readout
    }

    /// `T(images)`: substitute the parameter images (over any context).
    pub fn instantiate(&self, at: &Morphism) -> Result<SuperMatrix> {
        self.template.map(at)
    }

    fn read(&self, m: &SuperMatrix) -> Result<Morphism> {
        let images = self.readout.iter().map(|&(i, j)| m.entries[i][j].clone()).collect();
        Morphism::new(&self.params, &m.ctx, images)
    }

    fn check_member(&self, m: &SuperMatrix) -> Result<ClosureOutcome> {
        let composed = self.read(m)?;
        let defect = self.instantiate(&composed)?.sub(m)?;
        Ok(ClosureOutcome { composed, defect })
    }

    /// Multiply `T(p)·T(p')` over the doubled parameter context and read the
    /// composite parameters back.
    pub fn product_closure(&self) -> Result<ClosureOutcome> {
        let doubled = self.params.copies(2)?;
        let n = self.params.len();
        let first = Morphism::new(&self.params, &doubled, (0..n).map(|k| SuperPoly::gen(&doubled, k)).collect())?;
        let second = Morphism::new(&self.params, &doubled, (0..n).map(|k| SuperPoly::gen(&doubled, n + k)).collect())?;
        let prod = self.instantiate(&first)?.matmul(&self.instantiate(&second)?)?;
        self.check_member(&prod)
    }

    /// Invert `T(p)` and read the inverse parameters back.
    pub fn inverse_closure(&self) -> Result<ClosureOutcome> {
        self.check_member(&self.template.inverse()?)
    }

    /// Derivative of the template along each parameter at the point `unit`.
    pub fn tangents(&self, unit: &[GaussianRational]) -> Result<Vec<(Parity, Vec<Vec<GaussianRational>>)>> {
        let point_ctx = Context::new(vec![])?;
        let at = Morphism::new(&self.params, &point_ctx, unit.iter().map(|c| SuperPoly::constant(&point_ctx, c.clone())).collect())?;
        (0..self.params.len())
            .map(|k| {
                let d = self.template.derive(&Derivation::partial(&self.params, k))?.map(&at)?;
                let consts = d.as_constants().expect("point context has no generators");
                Ok((self.params.generator(k).parity, consts))
            })
            .collect()
    }
}

/// Supercommutator of constant matrices in the given format:
/// `XY − (−1)^{|X||Y|} YX`.
pub fn matrix_bracket(x: &[Vec<GaussianRational>], px: Parity, y: &[Vec<GaussianRational>], py: Parity) -> Vec<Vec<GaussianRational>> {
    let n = x.len();
    let prod = |a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]| -> Vec<Vec<GaussianRational>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).fold(GaussianRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect()).collect()
    };
    let xy = prod(x, y);
    let yx = prod(y, x);
    let sign = if px.koszul(py) { -GaussianRational::one() } else { GaussianRational::one() };
    xy.iter().zip(&yx).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - &(&sign * b)).collect()).collect()
}
