use super::module::{BModule, PiModule};
use super::CmError;
use crate::curve::{derivation_data, eval_words, CurveModel, DerivationData};
use crate::exact::{int, BiPoly, Dual, Mat, Rational, Ring};

/// A point of the Calogero-Moser space of a curve: matrices on `V = ℚⁿ` for
/// the coordinate generators and the derivation generator, and the maps
/// to and from `V_∞ = ℚ` for each generator of the line bundle `ℐ`.
///
/// The relations use the convention `[Z̄, X̄] = Id + Σ v̄ᵢw̄ᵢ` (on the line)
/// and `Σ w̄ᵢv̄ᵢ = −n`, at weight `(1, −n)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CMPoint {
    pub curve: CurveModel,
    pub n: usize,
    pub x: Mat<Rational>,
    /// Present exactly for plane curves.
    pub y: Option<Mat<Rational>>,
    /// Action of the derivation generator.
    pub z: Mat<Rational>,
    /// Column vectors `v̄ᵢ`, one per generator of `ℐ`.
    pub vs: Vec<Vec<Rational>>,
    /// Row covectors `w̄ᵢ`.
    pub ws: Vec<Vec<Rational>>,
    /// Generators `vᵢ` of `ℐ ⊂ A`; `[1]` for the trivial bundle.
    pub ideal: Vec<BiPoly>,
}

/// One checked relation with its residual (left side minus right side).
#[derive(Clone, PartialEq, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
    /// `None` for conditions that are not equations (invertibility).
    pub residual: Option<Mat<Rational>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct RelationReport {
    pub pass: bool,
    pub relations: Vec<RelationCheck>,
}

impl CMPoint {
    /// The weight `(λ, λ_∞) = (1, −n)`.
    pub fn weight(&self) -> (Rational, Rational) {
        (int(1), int(-(self.n as i64)))
    }

    pub fn check_sizes(&self) -> Result<(), CmError> {
        let n = self.n;
        let square = |m: &Mat<Rational>, name: &str| -> Result<(), CmError> {
            if (m.rows(), m.cols()) == (n, n) {
                Ok(())
            } else {
                Err(CmError::Size(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols())))
            }
        };
        square(&self.x, "X")?;
        square(&self.z, "Z")?;
        match (&self.y, self.curve.has_y()) {
            (Some(y), true) => square(y, "Y")?,
            (None, false) => {}
            (Some(_), false) => return Err(CmError::Size(format!("Y given for {}", self.curve.kind_name()))),
            (None, true) => return Err(CmError::Size("Y missing for a plane curve".into())),
        }
        if self.vs.len() != self.ws.len() || self.vs.len() != self.ideal.len() {
            return Err(CmError::Size(format!(
                "{} vs, {} ws and {} ideal generators",
                self.vs.len(),
                self.ws.len(),
                self.ideal.len()
            )));
        }
        if self.vs.iter().chain(&self.ws).any(|v| v.len() != n) {
            return Err(CmError::Size(format!("v and w vectors must have length {n}")));
        }
        Ok(())
    }

    pub fn v_column(&self, i: usize) -> Mat<Rational> {
        Mat::column(self.vs[i].clone())
    }

    pub fn w_row(&self, i: usize) -> Mat<Rational> {
        Mat::row_vector(self.ws[i].clone())
    }

    /// `Δ̄ = Id + Σ v̄ᵢw̄ᵢ`.
    pub fn delta(&self) -> Mat<Rational> {
        (0..self.vs.len()).fold(Mat::identity(self.n), |acc, i| acc.add(&self.v_column(i).mul(&self.w_row(i))))
    }

    /// The underlying module over the one-point extension (first generator
    /// of `ℐ` only).
    pub fn to_bmodule(&self) -> BModule {
        let mut actions = vec![self.x.clone()];
        actions.extend(self.y.clone());
        let phi = if self.vs.is_empty() { Mat::zeros(self.n, 1) } else { self.v_column(0) };
        BModule { n: self.n, n_inf: 1, actions, phi }
    }

    pub fn to_pimodule(&self) -> PiModule {
        let mut actions = vec![self.x.clone()];
        actions.extend(self.y.clone());
        actions.push(self.z.clone());
        PiModule {
            n: self.n,
            n_inf: 1,
            actions,
            vs: (0..self.vs.len()).map(|i| self.v_column(i)).collect(),
            ws: (0..self.ws.len()).map(|i| self.w_row(i)).collect(),
        }
    }
}

/// Relation residuals over any ring, shared by verification (over ℚ) and
/// linearization (over dual numbers).
pub(crate) fn residuals<R: Ring>(
    curve: &CurveModel,
    d: &DerivationData,
    x: &Mat<R>,
    y: Option<&Mat<R>>,
    z: &Mat<R>,
    vs: &[Mat<R>],
    ws: &[Mat<R>],
) -> Vec<(&'static str, Mat<R>)> {
    let n = x.rows();
    let delta = vs.iter().zip(ws).fold(Mat::identity(n), |acc, (v, w)| acc.add(&v.mul(w)));
    let trace = vs.iter().zip(ws).fold(Mat::scalar(1, R::from_int(n as i64)), |acc, (v, w)| acc.add(&w.mul(v)));
    let mut out = Vec::new();
    let zeros = Mat::zeros(n, n);
    match (curve, y) {
        (CurveModel::PlaneCurve { f, .. }, Some(y)) => {
            out.push(("F(X,Y) = 0", f.eval_matrices(x, y)));
            out.push(("[X,Y] = 0", x.commutator(y)));
            out.push(("[Z,X] = sum of words", z.commutator(x).sub(&eval_words(&d.zx, x, y, &delta))));
            out.push(("[Z,Y] = sum of words", z.commutator(y).sub(&eval_words(&d.zy, x, y, &delta))));
        }
        _ => {
            out.push(("[Z,X] = Id + sum v w", z.commutator(x).sub(&eval_words(&d.zx, x, &zeros, &delta))));
        }
    }
    out.push(("sum w v = -n", trace));
    out
}

pub fn verify_relations(p: &CMPoint) -> Result<RelationReport, CmError> {
    p.check_sizes()?;
    let d = derivation_data(&p.curve);
    let vs: Vec<_> = (0..p.vs.len()).map(|i| p.v_column(i)).collect();
    let ws: Vec<_> = (0..p.ws.len()).map(|i| p.w_row(i)).collect();
    let mut relations: Vec<RelationCheck> = residuals(&p.curve, &d, &p.x, p.y.as_ref(), &p.z, &vs, &ws)
        .into_iter()
        .map(|(name, r)| RelationCheck { name: name.into(), pass: r.is_zero(), residual: Some(r) })
        .collect();
    if p.curve == CurveModel::Torus {
        let det = p.x.det().expect("square");
        relations.insert(0, RelationCheck { name: "X invertible".into(), pass: !det.is_zero(), residual: None });
    }
    let pass = relations.iter().all(|r| r.pass);
    Ok(RelationReport { pass, relations })
}

/// The generic point attached to `n` points of the curve: diagonal `X̄`, `Ȳ`,
/// `v̄ = −w̄ᵗ = (1,…,1)ᵗ` and the Moser-type matrix `Z̄` with `Z̄ᵢᵢ = αᵢ` and
/// `Z̄ᵢⱼ = F(xⱼ, yᵢ)/((xᵢ − xⱼ)(yᵢ − yⱼ))`; on the line and torus
/// `Z̄ᵢⱼ = 1/(xᵢ − xⱼ)` and the `y` coordinates are ignored.
pub fn generic_point(
    curve: &CurveModel,
    pts: &[(Rational, Rational)],
    alphas: &[Rational],
) -> Result<CMPoint, CmError> {
    let n = pts.len();
    if alphas.len() != n {
        return Err(CmError::Size(format!("{} alphas for {n} points", alphas.len())));
    }
    for (i, (x, y)) in pts.iter().enumerate() {
        if !curve.contains(x, y) {
            return Err(CmError::NotOnCurve { index: i });
        }
    }
    let plane = curve.equation();
    for i in 0..n {
        for j in i + 1..n {
            if pts[i].0 == pts[j].0 {
                return Err(CmError::RepeatedCoordinate { coordinate: 'x', i, j });
            }
            if plane.is_some() && pts[i].1 == pts[j].1 {
                return Err(CmError::RepeatedCoordinate { coordinate: 'y', i, j });
            }
        }
    }
    let mut z = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                alphas[i].clone()
            } else {
                let dx = &pts[i].0 - &pts[j].0;
                match plane {
                    Some(f) => f.eval(&pts[j].0, &pts[i].1) / (dx * (&pts[i].1 - &pts[j].1)),
                    None => dx.recip(),
                }
            };
            z.set(i, j, v);
        }
    }
    let xs: Vec<_> = pts.iter().map(|p| p.0.clone()).collect();
    let y = plane.map(|_| Mat::diag(&pts.iter().map(|p| p.1.clone()).collect::<Vec<_>>()));
    Ok(CMPoint {
        curve: curve.clone(),
        n,
        x: Mat::diag(&xs),
        y,
        z,
        vs: vec![vec![int(1); n]],
        ws: vec![vec![int(-1); n]],
        ideal: vec![BiPoly::one()],
    })
}

/// Dimension of the commutant of the point viewed as a module over the
/// deformed preprojective algebra; 1 certifies the expected rigidity.
pub fn commutant_dim(p: &CMPoint) -> usize {
    p.to_pimodule().commutant_dim()
}

/// Dimension of the kernel of the linearized relations at `p`, with every
/// matrix entry a variable (gauge directions included).
pub fn tangent_dim(p: &CMPoint) -> Result<usize, CmError> {
    p.check_sizes()?;
    let d = derivation_data(&p.curve);
    let n = p.n;
    let dual = |m: &Mat<Rational>| m.map(|c| Dual::constant(c.clone()));
    let base_x = dual(&p.x);
    let base_y = p.y.as_ref().map(dual);
    let base_z = dual(&p.z);
    let base_vs: Vec<_> = (0..p.vs.len()).map(|i| dual(&p.v_column(i))).collect();
    let base_ws: Vec<_> = (0..p.ws.len()).map(|i| dual(&p.w_row(i))).collect();

    // (matrix slot, row, col) for every variable
    let mut vars = Vec::new();
    let mut slot_sizes = vec![(n, n)];
    if base_y.is_some() {
        slot_sizes.push((n, n));
    }
    slot_sizes.push((n, n));
    slot_sizes.extend(base_vs.iter().map(|_| (n, 1)));
    slot_sizes.extend(base_ws.iter().map(|_| (1, n)));
    for (s, &(r, c)) in slot_sizes.iter().enumerate() {
        for i in 0..r {
            for j in 0..c {
                vars.push((s, i, j));
            }
        }
    }
    let mut columns = Vec::with_capacity(vars.len());
    for &(s, i, j) in &vars {
        let mut mats: Vec<Mat<Dual<Rational>>> = vec![base_x.clone()];
        mats.extend(base_y.clone());
        mats.push(base_z.clone());
        mats.extend(base_vs.iter().cloned());
        mats.extend(base_ws.iter().cloned());
        let e = mats[s].get(i, j).clone();
        mats[s].set(i, j, Dual::new(e.re, int(1)));
        let has_y = base_y.is_some() as usize;
        let k = p.vs.len();
        let (x, rest) = mats.split_first().unwrap();
        let y = (has_y == 1).then(|| &rest[0]);
        let z = &rest[has_y];
        let vs = &rest[has_y + 1..has_y + 1 + k];
        let ws = &rest[has_y + 1 + k..];
        let col: Vec<Rational> = residuals(&p.curve, &d, x, y, z, vs, ws)
            .into_iter()
            .flat_map(|(_, m)| m.entries().iter().map(|c| c.eps.clone()).collect::<Vec<_>>())
            .collect();
        columns.push(col);
    }
    if columns.is_empty() {
        return Ok(0);
    }
    let jac = Mat::from_rows(columns).transpose();
    Ok(vars.len() - jac.rank())
}

/// `tangent_dim − n²`, the dimension after removing the `GL_n` gauge orbit.
pub fn moduli_dim(p: &CMPoint) -> Result<i64, CmError> {
    Ok(tangent_dim(p)? as i64 - (p.n * p.n) as i64)
}

/// A 1-form `ω` with `ω(∂) = g·x^shift`; negative shifts need the torus.
#[derive(Clone, PartialEq, Debug)]
pub struct OneForm {
    pub curve: CurveModel,
    pub coefficient: BiPoly,
    pub x_shift: i64,
}

impl OneForm {
    pub fn new(curve: CurveModel, coefficient: BiPoly) -> Self {
        OneForm { curve, coefficient, x_shift: 0 }
    }

    /// The logarithmic derivative `u⁻¹du` of the torus unit `u = x^r`.
    pub fn log_unit(r: i64) -> Self {
        OneForm { curve: CurveModel::Torus, coefficient: BiPoly::constant(int(r)), x_shift: -1 }
    }
}

fn x_power(p: &CMPoint, k: i64) -> Result<Mat<Rational>, CmError> {
    if k >= 0 {
        return Ok(p.x.pow(k as u32));
    }
    if p.curve != CurveModel::Torus {
        return Err(CmError::Unsupported(format!("x is not a unit on {}", p.curve.kind_name())));
    }
    let inv = p.x.inverse().map_err(|_| CmError::Singular("X".into()))?;
    Ok(inv.pow((-k) as u32))
}

/// `Z̄ ↦ Z̄ + g(X̄, Ȳ)`, all other data unchanged.
pub fn omega_twist(p: &CMPoint, w: &OneForm) -> Result<CMPoint, CmError> {
    p.check_sizes()?;
    if w.curve != p.curve {
        return Err(CmError::Unsupported("1-form on a different curve".into()));
    }
    let ym = p.y.clone().unwrap_or_else(|| Mat::zeros(p.n, p.n));
    if p.y.is_none() && w.coefficient.deg_y().unwrap_or(0) > 0 {
        return Err(CmError::Unsupported("y does not exist on this curve".into()));
    }
    let g = w.coefficient.eval_matrices(&p.x, &ym).mul(&x_power(p, w.x_shift)?);
    let mut q = p.clone();
    q.z = p.z.add(&g);
    Ok(q)
}

/// The action of the unit `x^r` on a torus point: `Z̄ ↦ Z̄ + r·X̄⁻¹`.
pub fn lambda_act(p: &CMPoint, r: i64) -> Result<CMPoint, CmError> {
    if p.curve != CurveModel::Torus {
        return Err(CmError::Unsupported(format!("no unit x^r on {}", p.curve.kind_name())));
    }
    p.check_sizes()?;
    let inv = p.x.inverse().map_err(|_| CmError::Singular("X".into()))?;
    let mut q = p.clone();
    q.z = p.z.add(&inv.scale(&int(r)));
    Ok(q)
}
