//! Integer triangles as CSV (`n,k,value`) or JSON.

use num_bigint::BigInt;
use serde::Serialize;

use crate::betti::{betti_poly, t_recurrence_polys};
use crate::eulerian::{binomial_eulerian_threeterm_polys, eulerian_polys};
use crate::poly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFamily {
    /// `⟨n,k⟩` as coefficients of `A_n(x)`, with `A_0 = 1`.
    Eulerian,
    BinomialEulerian,
    Betti,
    /// Coefficients of `T_n(q)` in `q`.
    T,
}

impl TableFamily {
    pub const ALL: [TableFamily; 4] = [
        TableFamily::Eulerian,
        TableFamily::BinomialEulerian,
        TableFamily::Betti,
        TableFamily::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableFamily::Eulerian => "eulerian",
            TableFamily::BinomialEulerian => "binomial-eulerian",
            TableFamily::Betti => "betti",
            TableFamily::T => "t",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub family: &'static str,
    pub n_max: usize,
    #[serde(serialize_with = "rows_as_strings")]
    pub rows: Vec<Vec<BigInt>>,
}

fn rows_as_strings<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>()),
    )
}

impl Triangle {
    pub fn build(family: TableFamily, n_max: usize) -> Self {
        let polys: Vec<IntPoly> = match family {
            TableFamily::Eulerian => eulerian_polys(n_max),
            TableFamily::BinomialEulerian => binomial_eulerian_threeterm_polys(n_max),
            TableFamily::Betti => (0..=n_max).map(betti_poly).collect(),
            TableFamily::T => t_recurrence_polys(n_max),
        };
        Self {
            family: family.name(),
            n_max,
            rows: polys.iter().map(|p| p.coeffs().to_vec()).collect(),
        }
    }

    /// Header `n,k,value`, then one record per cell in `(n, k)` order.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "k", "value"]).expect("in-memory write");
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                w.serialize((n, k, v.to_string())).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_lists_cells_in_order() {
        let t = Triangle::build(TableFamily::BinomialEulerian, 2);
        assert_eq!(
            t.to_csv(),
            "n,k,value\n0,0,1\n1,0,1\n1,1,1\n2,0,1\n2,1,3\n2,2,1\n"
        );
    }

    #[test]
    fn json_uses_decimal_strings() {
        let t = Triangle::build(TableFamily::T, 1);
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["rows"], serde_json::json!([["0", "1"], ["0", "1", "1"]]));
        assert_eq!(v["family"], "t");
    }

    #[test]
    fn every_family_has_n_max_plus_one_rows() {
        for f in TableFamily::ALL {
            assert_eq!(Triangle::build(f, 6).rows.len(), 7, "{}", f.name());
        }
    }
}
