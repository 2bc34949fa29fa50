//! Fixed-size 4-vector and 4x4 helpers.

pub type Vec4 = [f64; 4];
pub type Mat4 = [[f64; 4]; 4];

pub fn dot(a: &Vec4, b: &Vec4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &Vec4) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalized(a: &Vec4) -> Vec4 {
    let n = norm(a);
    a.map(|x| x / n)
}

pub fn mat_vec(m: &Mat4, v: &Vec4) -> Vec4 {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = dot(row, v);
    }
    out
}

pub fn frobenius(m: &Mat4) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn trace(m: &Mat4) -> f64 {
    (0..4).map(|i| m[i][i]).sum()
}

/// `|| m v - lambda v ||`.
pub fn eigen_residual(m: &Mat4, lambda: f64, v: &Vec4) -> f64 {
    let mv = mat_vec(m, v);
    let mut r = [0.0; 4];
    for i in 0..4 {
        r[i] = mv[i] - lambda * v[i];
    }
    norm(&r)
}

/// Sine of the angle between the lines spanned by `a` and `b`.
///
/// Uses `|a - b| |a + b| / 2` on the normalized vectors, which is exact for
/// identical inputs and accurate for small angles.
pub fn sin_angle(a: &Vec4, b: &Vec4) -> f64 {
    let (a, b) = (normalized(a), normalized(b));
    let mut diff = [0.0; 4];
    let mut sum = [0.0; 4];
    for i in 0..4 {
        diff[i] = a[i] - b[i];
        sum[i] = a[i] + b[i];
    }
    0.5 * norm(&diff) * norm(&sum)
}
