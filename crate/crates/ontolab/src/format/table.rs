//! JSON layout of assignment tables:
//!
//! ```json
//! {"order": "ALICE_FIRST",
//!  "grid": {"A": ["sz", "sx"], "B": ["sz", "sx"]},
//!  "entries": {"sz,sz": [1, 1], "sz,sx": [1, -1], "sx,sz": [-1, 1], "sx,sx": [1, 1]}}
//! ```
//!
//! Entry keys are `"alice_setting,bob_setting"`; every cell must be present.

use serde_json::{Map, Value};

use ontolab_core::composite::{AssignmentTable, Outcome, SettingGrid, TemporalOrder};

use super::schema::{self, join, Checker};
use crate::error::FormatError;

pub fn parse_order(s: &str) -> Option<TemporalOrder> {
    match s {
        "ALICE_FIRST" => Some(TemporalOrder::AliceFirst),
        "BOB_FIRST" => Some(TemporalOrder::BobFirst),
        _ => None,
    }
}

pub fn table_from_str(text: &str) -> Result<AssignmentTable, FormatError> {
    let doc = schema::parse(text)?;
    let mut c = Checker::new();
    let table = read_table(&mut c, &doc);
    c.finish(table)
}

fn read_table(c: &mut Checker, doc: &Value) -> Option<AssignmentTable> {
    let top = c.object(doc, "", &["order", "grid", "entries"], &[])?;
    let order = top.get("order").and_then(|o| {
        let s = c.string(o, "/order")?;
        let order = parse_order(s);
        if order.is_none() {
            c.report(
                "/order",
                format!("unknown order `{s}`; expected ALICE_FIRST or BOB_FIRST"),
            );
        }
        order
    });
    let grid = top.get("grid").and_then(|g| {
        let obj = c.object(g, "/grid", &["A", "B"], &[])?;
        let alice = obj.get("A").and_then(|a| c.strings(a, "/grid/A"));
        let bob = obj.get("B").and_then(|b| c.strings(b, "/grid/B"));
        match SettingGrid::new(alice?, bob?) {
            Ok(grid) => Some(grid),
            Err(e) => {
                c.report("/grid", e.to_string());
                None
            }
        }
    });
    let entries = top.get("entries").and_then(|e| c.map(e, "/entries"));
    let (grid, entries) = (grid?, entries?);

    let mut cells: Vec<Option<(Outcome, Outcome)>> = vec![None; grid.cells()];
    let mut present = vec![false; grid.cells()];
    let nb = grid.bob().len();
    for (key, value) in entries {
        let path = join("/entries", key);
        let position = key.split_once(',').and_then(|(x, y)| {
            let x = grid.alice().iter().position(|s| s == x.trim())?;
            let y = grid.bob().iter().position(|s| s == y.trim())?;
            Some(x * nb + y)
        });
        let Some(p) = position else {
            c.report(&path, "key is not an `alice,bob` pair of grid settings");
            continue;
        };
        present[p] = true;
        let Some(pair) = c.array(value, &path) else {
            continue;
        };
        let outcomes: Vec<Option<Outcome>> = pair
            .iter()
            .map(|v| v.as_i64().and_then(Outcome::from_value))
            .collect();
        match outcomes.as_slice() {
            [Some(a), Some(b)] => cells[p] = Some((*a, *b)),
            _ => c.report(&path, "expected a pair of outcomes, each 1 or -1"),
        }
    }
    for (p, seen) in present.iter().enumerate() {
        if !seen {
            let (x, y) = (&grid.alice()[p / nb], &grid.bob()[p % nb]);
            c.report("/entries", format!("missing entry `{x},{y}`"));
        }
    }
    let cells: Vec<(Outcome, Outcome)> = cells.into_iter().collect::<Option<_>>()?;
    AssignmentTable::new(grid, cells, order?).ok()
}

pub fn table_to_value(table: &AssignmentTable) -> Value {
    let grid = table.grid();
    let mut top = Map::new();
    top.insert("order".into(), table.order().as_str().into());
    let mut g = Map::new();
    g.insert(
        "A".into(),
        grid.alice().iter().map(|s| Value::from(s.clone())).collect(),
    );
    g.insert(
        "B".into(),
        grid.bob().iter().map(|s| Value::from(s.clone())).collect(),
    );
    top.insert("grid".into(), Value::Object(g));
    let mut entries = Map::new();
    for (i, x) in grid.alice().iter().enumerate() {
        for (j, y) in grid.bob().iter().enumerate() {
            let (a, b) = table.get(i, j);
            entries.insert(format!("{x},{y}"), Value::from(vec![a.value(), b.value()]));
        }
    }
    top.insert("entries".into(), Value::Object(entries));
    Value::Object(top)
}

pub fn table_to_string(table: &AssignmentTable) -> String {
    let mut s = serde_json::to_string_pretty(&table_to_value(table)).expect("JSON values always serialise");
    s.push('\n');
    s
}
