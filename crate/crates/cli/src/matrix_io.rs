//! CSV matrix files: one `key=value` header line giving the dimensions,
//! then one row per line. Lines starting with `#` are ignored.
//!
//! Dataset file (`n_t` rows of `n_x` inputs followed by `n_y` targets):
//!
//! ```text
//! n_t=3,n_x=1,n_y=1
//! 3,1
//! 5,2
//! 7,3
//! ```
//!
//! Prior file (the mean on one line, then the `n_y` rows of `C_yy`):
//!
//! ```text
//! n_y=1,sigma2=0.5
//! 0
//! 1
//! ```

use std::collections::HashMap;
use std::path::Path;

use linest::{DMatrix, DVector, Dataset, GaussianPrior};

type Rows = Vec<Vec<f64>>;

fn read(path: &Path) -> Result<(HashMap<String, String>, Rows), String> {
    let what = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| format!("{what}: {e}"))?;
    let mut records = reader.records();
    let header = records
        .next()
        .ok_or_else(|| format!("{what}: empty file"))?
        .map_err(|e| format!("{what}: {e}"))?;
    let mut keys = HashMap::new();
    for field in header.iter() {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| format!("{what}: header field `{field}` is not key=value"))?;
        keys.insert(k.trim().to_string(), v.trim().to_string());
    }
    let mut rows = Vec::new();
    for (i, rec) in records.enumerate() {
        let rec = rec.map_err(|e| format!("{what}: {e}"))?;
        let row = rec
            .iter()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| format!("{what}: row {}: `{v}` is not a number", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((keys, rows))
}

fn key<T: std::str::FromStr>(keys: &HashMap<String, String>, name: &str, what: &str) -> Result<T, String> {
    let raw = keys
        .get(name)
        .ok_or_else(|| format!("{what}: header is missing `{name}`"))?;
    raw.parse()
        .map_err(|_| format!("{what}: header field {name}=`{raw}` is not valid"))
}

fn check_width(rows: &Rows, width: usize, what: &str, fields: &str) -> Result<(), String> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(format!(
                "{what}: row {} has {} values, expected {width} ({fields})",
                i + 1,
                row.len()
            ));
        }
    }
    Ok(())
}

pub fn read_dataset(path: &Path) -> Result<Dataset, String> {
    let what = path.display().to_string();
    let (keys, rows) = read(path)?;
    let n_t: usize = key(&keys, "n_t", &what)?;
    let n_x: usize = key(&keys, "n_x", &what)?;
    let n_y: usize = key(&keys, "n_y", &what)?;
    if rows.len() != n_t {
        return Err(format!(
            "{what}: header says n_t={n_t} but the file has {} rows",
            rows.len()
        ));
    }
    check_width(&rows, n_x + n_y, &what, &format!("n_x={n_x} + n_y={n_y}"))?;
    let xs = DMatrix::from_fn(n_x, n_t, |i, t| rows[t][i]);
    let ys = DMatrix::from_fn(n_y, n_t, |i, t| rows[t][n_x + i]);
    Dataset::from_columns(xs, ys).map_err(|e| format!("{what}: {e}"))
}

/// Target prior and known noise variance.
pub fn read_prior(path: &Path) -> Result<(GaussianPrior, f64), String> {
    let what = path.display().to_string();
    let (keys, rows) = read(path)?;
    let n_y: usize = key(&keys, "n_y", &what)?;
    let sigma2: f64 = key(&keys, "sigma2", &what)?;
    if rows.len() != n_y + 1 {
        return Err(format!(
            "{what}: expected 1 mean row and n_y={n_y} covariance rows, found {} rows",
            rows.len()
        ));
    }
    check_width(&rows, n_y, &what, &format!("n_y={n_y}"))?;
    let mu = DVector::from_vec(rows[0].clone());
    let c = DMatrix::from_fn(n_y, n_y, |i, j| rows[1 + i][j]);
    let prior = GaussianPrior::new(mu, c).map_err(|e| format!("{what}: {e}"))?;
    Ok((prior, sigma2))
}
