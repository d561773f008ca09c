//! Static SVG pictures of alcove balls, colored by centralizer orbit.
//!
//! Only ranks 1 and 2 are drawable. Points live in simple-coroot
//! coordinates; the picture embeds them with the invariant form normalized
//! so short roots have squared length 2, which renders the true alcove
//! shapes (equilateral for A2, right isoceles for B2/C2, and so on).

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::affine;
use crate::cartan::RootDatum;
use crate::involutions::Classification;
use crate::matrix::solve_rational;
use crate::orbits;
use crate::{Budgets, Error, Result};

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];

const SCALE: f64 = 80.0;

/// Vertices of the fundamental alcove: the origin plus, for each j, the
/// point on all walls but the j-th simple one, at level 1 on the highest
/// root.
fn fundamental_vertices(datum: &RootDatum) -> Vec<Vec<BigRational>> {
    let n = datum.rank();
    let a = datum.cartan();
    let theta = datum.highest_root();
    // row of <., theta> in coroot coordinates
    let theta_row: Vec<BigRational> = (0..n)
        .map(|k| {
            let mut acc = 0i64;
            for m in 0..n {
                acc += a.get(k, m) * theta[m];
            }
            BigRational::from(BigInt::from(acc))
        })
        .collect();

    let mut vertices = vec![vec![BigRational::zero(); n]];
    for j in 0..n {
        let mut rows = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for i in 0..n {
            if i == j {
                continue;
            }
            rows.push(
                (0..n)
                    .map(|k| BigRational::from(BigInt::from(a.get(k, i))))
                    .collect::<Vec<_>>(),
            );
            rhs.push(BigRational::zero());
        }
        rows.push(theta_row.clone());
        rhs.push(BigRational::one());
        let (v, _) = solve_rational(&rows, &rhs)
            .expect("alcove vertex system is nonsingular for a valid Cartan matrix");
        vertices.push(v);
    }
    vertices
}

/// Orthonormal images of the simple-coroot basis vectors, from the Cholesky
/// factor of their Gram matrix.
fn embedding(datum: &RootDatum) -> Vec<(f64, f64)> {
    let a = datum.cartan();
    if datum.rank() == 1 {
        return vec![(2f64.sqrt(), 0.0)];
    }
    // squared root lengths, short = 2; symmetrizability fixes the ratio
    let l1 = 2.0;
    let l2 = l1 * a.get(0, 1) as f64 / a.get(1, 0) as f64;
    let g11 = 2.0 * a.get(0, 0) as f64 / l1;
    let g12 = 2.0 * a.get(0, 1) as f64 / l2;
    let g22 = 2.0 * a.get(1, 1) as f64 / l2;
    let e1x = g11.sqrt();
    let e2x = g12 / e1x;
    let e2y = (g22 - e2x * e2x).sqrt();
    vec![(e1x, 0.0), (e2x, e2y)]
}

fn embed(p: &[BigRational], basis: &[(f64, f64)]) -> (f64, f64) {
    let mut x = 0.0;
    let mut y = 0.0;
    for (pi, (bx, by)) in p.iter().zip(basis) {
        let c = pi.to_f64().unwrap();
        x += c * bx;
        y += c * by;
    }
    // svg y grows downward
    (x * SCALE, -y * SCALE)
}

fn fmt(x: f64) -> String {
    let r = if x.abs() < 5e-4 { 0.0 } else { x };
    format!("{r:.3}")
}

/// Fixed points of sigma, solving (1 - w)p = lambda.
fn fixed_locus(
    sigma: &affine::AffineElement,
    datum: &RootDatum,
) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = datum.rank();
    let m = sigma.finite_part().matrix();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { 1 } else { 0 };
                    BigRational::from(BigInt::from(d - m.get(i, j)))
                })
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = sigma
        .translation()
        .iter()
        .map(|&t| BigRational::from(BigInt::from(t)))
        .collect();
    solve_rational(&rows, &rhs)
}

/// Picture of ball(radius) with each alcove filled by the orbit color of
/// the selected class and sigma's fixed locus overlaid.
pub fn render_svg(
    datum: &RootDatum,
    classification: &Classification,
    class_index: usize,
    radius: usize,
    budgets: &Budgets,
) -> Result<String> {
    let rank = datum.rank();
    if rank > 2 {
        return Err(Error::SvgRankUnsupported { rank });
    }
    let class = classification.class(class_index)?;
    let ball = affine::ball(datum, radius, budgets)?;
    let (_, assignment) = orbits::census_with_assignment(&class.sigma, &ball, datum, false)?;

    let basis = embedding(datum);
    let verts = fundamental_vertices(datum);

    // rank 1 cells are intervals; widen them into bands so fills are visible
    let band = 18.0;
    let mut cells: Vec<Vec<(f64, f64)>> = Vec::with_capacity(ball.len());
    for x in ball.elements() {
        let mut poly: Vec<(f64, f64)> = verts
            .iter()
            .map(|v| embed(&x.apply_point(v), &basis))
            .collect();
        if rank == 1 {
            let (x0, _) = poly[0];
            let (x1, _) = poly[1];
            poly = vec![(x0, -band), (x1, -band), (x1, band), (x0, band)];
        }
        cells.push(poly);
    }

    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for poly in &cells {
        for &(x, y) in poly {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
    }
    let pad = 24.0;
    let vb_x = min_x - pad;
    let vb_y = min_y - pad;
    let vb_w = max_x - min_x + 2.0 * pad;
    let vb_h = max_y - min_y + 2.0 * pad;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">\n",
        fmt(vb_x),
        fmt(vb_y),
        fmt(vb_w),
        fmt(vb_h),
        fmt(vb_w),
        fmt(vb_h),
    ));
    out.push_str(&format!(
        "<!-- type {}{}, ball radius {}, alcoves colored by orbit of class {} -->\n",
        datum.type_letter().as_char(),
        rank,
        radius,
        class_index,
    ));
    out.push_str("<g stroke=\"#ffffff\" stroke-width=\"1.2\" stroke-linejoin=\"round\">\n");
    for (i, poly) in cells.iter().enumerate() {
        let pts: Vec<String> = poly
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt(x), fmt(y)))
            .collect();
        let word: Vec<String> = ball.word(i).iter().map(|g| g.to_string()).collect();
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{}\"><title>orbit {}, word [{}]</title></polygon>\n",
            pts.join(" "),
            PALETTE[assignment[i] % PALETTE.len()],
            assignment[i],
            word.join(" "),
        ));
    }
    out.push_str("</g>\n");

    if let Some((point, nullspace)) = fixed_locus(&class.sigma, datum) {
        let free = nullspace.len();
        if free == 0 {
            let (cx, cy) = embed(&point, &basis);
            out.push_str(&format!(
                "<circle class=\"locus\" cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"#1a1a1a\"/>\n",
                fmt(cx),
                fmt(cy),
            ));
        } else if free == 1 {
            let (cx, cy) = embed(&point, &basis);
            let (dx, dy) = embed(&nullspace[0], &basis);
            let norm = (dx * dx + dy * dy).sqrt();
            if norm > 0.0 {
                let reach = vb_w + vb_h;
                let (ux, uy) = (dx / norm * reach, dy / norm * reach);
                out.push_str(&format!(
                    "<line class=\"locus\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" \
                     stroke=\"#1a1a1a\" stroke-width=\"2.5\" stroke-dasharray=\"7 5\"/>\n",
                    fmt(cx - ux),
                    fmt(cy - uy),
                    fmt(cx + ux),
                    fmt(cy + uy),
                ));
            }
        }
        // two free directions fix the whole plane: nothing to draw
    }

    out.push_str("</svg>\n");
    Ok(out)
}
