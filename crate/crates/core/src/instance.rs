//! Solomon-format instances.
//!
//! The layout is a title line, a `VEHICLE` block with `NUMBER` and
//! `CAPACITY`, and a `CUSTOMER` block whose rows are
//! `id x y demand ready due service`. Row 0 is the depot. Whitespace is
//! insignificant and every numeric field is read as a real number.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Customer {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub demand: f64,
    pub ready: f64,
    pub due: f64,
    pub service: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    /// Fleet size from the header. Advisory: solvers may open more routes.
    pub vehicle_count: usize,
    pub capacity: f64,
    pub depot: Customer,
    /// Customers ordered by id, ids `1..=n`.
    pub customers: Vec<Customer>,
}

impl Instance {
    pub fn len(&self) -> usize {
        self.customers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.customers.is_empty()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        parse_solomon(&text)
    }

    /// Checks the structural invariants. Called by the parser; exposed for
    /// instances built in code.
    pub fn validate(&self) -> Result<()> {
        if self.vehicle_count < 1 {
            return Err(Error::Validation("vehicle count must be at least 1".into()));
        }
        if !(self.capacity > 0.0) {
            return Err(Error::Validation(format!(
                "capacity must be positive, got {}",
                self.capacity
            )));
        }
        if self.depot.id != 0 {
            return Err(Error::Validation("depot must have id 0".into()));
        }
        if self.depot.demand != 0.0 || self.depot.service != 0.0 {
            return Err(Error::Validation(format!(
                "depot row must have zero demand and service, got demand {} service {}",
                self.depot.demand, self.depot.service
            )));
        }
        if self.depot.ready > self.depot.due {
            return Err(Error::Validation("depot window is empty".into()));
        }
        for (k, c) in self.customers.iter().enumerate() {
            if c.id != k + 1 {
                return Err(Error::Validation(format!(
                    "customer ids must be 1..={} without gaps; found {} at position {}",
                    self.customers.len(),
                    c.id,
                    k + 1
                )));
            }
            if c.ready > c.due {
                return Err(Error::Validation(format!(
                    "customer {} has ready time {} after due date {}",
                    c.id, c.ready, c.due
                )));
            }
            if c.demand < 0.0 || c.service < 0.0 {
                return Err(Error::Validation(format!(
                    "customer {} has negative demand or service",
                    c.id
                )));
            }
            if c.demand > self.capacity {
                return Err(Error::Validation(format!(
                    "customer {} demand {} exceeds capacity {}",
                    c.id, c.demand, self.capacity
                )));
            }
        }
        Ok(())
    }

    /// Renders the instance back into the Solomon layout.
    pub fn to_solomon(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.name);
        out.push_str("\nVEHICLE\nNUMBER     CAPACITY\n");
        let _ = writeln!(out, "  {}         {}", self.vehicle_count, self.capacity);
        out.push_str("\nCUSTOMER\n");
        out.push_str(
            "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n\n",
        );
        for c in std::iter::once(&self.depot).chain(&self.customers) {
            let _ = writeln!(
                out,
                "{:>5} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
                c.id, c.x, c.y, c.demand, c.ready, c.due, c.service
            );
        }
        out
    }
}

fn number(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a number, found {tok:?}"),
    })
}

/// Parses a Solomon instance and validates it.
pub fn parse_solomon(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let name = match lines.next() {
        Some((_, l)) if !l.eq_ignore_ascii_case("VEHICLE") => l.to_string(),
        _ => return Err(Error::MissingSection("title")),
    };

    let mut found_vehicle = false;
    for (_, l) in lines.by_ref() {
        if l.eq_ignore_ascii_case("VEHICLE") {
            found_vehicle = true;
            break;
        }
    }
    if !found_vehicle {
        return Err(Error::MissingSection("VEHICLE"));
    }

    let header = lines.next().ok_or(Error::MissingSection("VEHICLE NUMBER/CAPACITY"))?;
    let upper = header.1.to_ascii_uppercase();
    if !(upper.contains("NUMBER") && upper.contains("CAPACITY")) {
        return Err(Error::MissingSection("VEHICLE NUMBER/CAPACITY"));
    }
    let (vline, vrow) = lines.next().ok_or(Error::MissingSection("VEHICLE NUMBER/CAPACITY"))?;
    let toks: Vec<&str> = vrow.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::Parse {
            line: vline,
            msg: format!("expected `NUMBER CAPACITY`, found {vrow:?}"),
        });
    }
    let k = number(toks[0], vline)?;
    if k < 1.0 || k.fract() != 0.0 {
        return Err(Error::Validation(format!("vehicle number must be a positive integer, got {k}")));
    }
    let capacity = number(toks[1], vline)?;

    let (cline, c) = lines.next().ok_or(Error::MissingSection("CUSTOMER"))?;
    if !c.eq_ignore_ascii_case("CUSTOMER") {
        return Err(Error::Parse {
            line: cline,
            msg: format!("expected CUSTOMER section, found {c:?}"),
        });
    }

    let mut depot = None;
    let mut customers = Vec::new();
    for (line, row) in lines {
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks[0].parse::<f64>().is_err() {
            // column header
            continue;
        }
        if toks.len() != 7 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 7 columns, found {}", toks.len()),
            });
        }
        let mut v = [0.0; 7];
        for (slot, tok) in v.iter_mut().zip(&toks) {
            *slot = number(tok, line)?;
        }
        if v[0] < 0.0 || v[0].fract() != 0.0 {
            return Err(Error::Parse {
                line,
                msg: format!("customer number must be a non-negative integer, got {}", v[0]),
            });
        }
        let cust = Customer {
            id: v[0] as usize,
            x: v[1],
            y: v[2],
            demand: v[3],
            ready: v[4],
            due: v[5],
            service: v[6],
        };
        if cust.id == 0 {
            if depot.is_some() {
                return Err(Error::Validation("duplicate depot row".into()));
            }
            depot = Some(cust);
        } else {
            customers.push(cust);
        }
    }

    let depot = depot.ok_or_else(|| Error::Validation("no depot row (customer 0)".into()))?;
    customers.sort_by_key(|c| c.id);
    if let Some(w) = customers.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(Error::Validation(format!("duplicate customer id {}", w[0].id)));
    }

    let inst = Instance {
        name,
        vehicle_count: k as usize,
        capacity,
        depot,
        customers,
    };
    inst.validate()?;
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "C101\n\nVEHICLE\nNUMBER     CAPACITY\n  25         200\n\nCUSTOMER\n\
CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n \n\
    0      40         50          0          0       1236          0   \n\
    1      45         68         10        912        967         90   \n\
    2      45         70         30        825        870         90   \n";

    #[test]
    fn parses_header_and_rows() {
        let inst = parse_solomon(SMALL).unwrap();
        assert_eq!(inst.name, "C101");
        assert_eq!(inst.vehicle_count, 25);
        assert_eq!(inst.capacity, 200.0);
        assert_eq!((inst.depot.x, inst.depot.y), (40.0, 50.0));
        assert_eq!((inst.depot.ready, inst.depot.due), (0.0, 1236.0));
        let c1 = &inst.customers[0];
        assert_eq!(
            (c1.id, c1.demand, c1.ready, c1.due, c1.service),
            (1, 10.0, 912.0, 967.0, 90.0)
        );
    }

    #[test]
    fn missing_vehicle_section() {
        let err = parse_solomon("X\nCUSTOMER\n0 0 0 0 0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::MissingSection("VEHICLE")), "{err}");
    }

    #[test]
    fn missing_customer_section() {
        let err = parse_solomon("X\nVEHICLE\nNUMBER CAPACITY\n2 10\n").unwrap_err();
        assert!(matches!(err, Error::MissingSection("CUSTOMER")), "{err}");
    }

    #[test]
    fn depot_with_demand_rejected() {
        let text = SMALL.replace("0      40         50          0", "0      40         50          5");
        assert!(matches!(parse_solomon(&text), Err(Error::Validation(_))));
    }

    #[test]
    fn depot_with_service_rejected() {
        let text = SMALL.replace("1236          0", "1236          3");
        assert!(matches!(parse_solomon(&text), Err(Error::Validation(_))));
    }

    #[test]
    fn duplicate_and_missing_ids_rejected() {
        let dup = format!("{SMALL}    2      1 1 1 1 2 0\n");
        assert!(matches!(parse_solomon(&dup), Err(Error::Validation(_))));
        let gap = SMALL.replace("\n2      45", "\n3      45");
        assert_ne!(gap, SMALL);
        assert!(matches!(parse_solomon(&gap), Err(Error::Validation(_))));
    }

    #[test]
    fn echo_round_trip() {
        let inst = parse_solomon(SMALL).unwrap();
        let again = parse_solomon(&inst.to_solomon()).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn fractional_fields_survive_echo() {
        let mut inst = parse_solomon(SMALL).unwrap();
        inst.customers[0].x = 12.345678901234;
        let again = parse_solomon(&inst.to_solomon()).unwrap();
        assert_eq!(inst, again);
    }
}
