//! JSON state files: `{"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}`.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;

use nonclassical::{BipartiteDims, ComplexMatrix, DensityMatrix, Error, Tolerances};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    dims: [usize; 2],
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Renders a state with 17 significant digits per number, one row per line.
pub fn render(rho: &DensityMatrix) -> String {
    let dims = rho.dims();
    let m = rho.matrix();
    let mut out = String::new();
    writeln!(
        out,
        "{{\n  \"dims\": [{}, {}],\n  \"matrix\": [",
        dims.d_a, dims.d_b
    )
    .unwrap();
    for i in 0..m.dim() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| format!("[{:.16e}, {:.16e}]", z.re, z.im))
            .collect();
        let sep = if i + 1 == m.dim() { "" } else { "," };
        writeln!(out, "    [{}]{sep}", row.join(", ")).unwrap();
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn parse(text: &str, tol: &Tolerances) -> Result<DensityMatrix, Error> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("state file: {e}")))?;
    let [da, db] = file.dims;
    let dims = BipartiteDims::new(da, db)?;
    let n = dims.total();
    if file.matrix.len() != n {
        return Err(Error::Malformed(format!(
            "field `matrix`: {} rows, expected dA*dB = {n}",
            file.matrix.len()
        )));
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in file.matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "field `matrix`, row {i}: {} entries, expected {n}",
                row.len()
            )));
        }
        data.extend(row.iter().map(|[re, im]| Complex64::new(*re, *im)));
    }
    DensityMatrix::with_tolerances(ComplexMatrix::from_vec(n, data)?, dims, tol)
}
