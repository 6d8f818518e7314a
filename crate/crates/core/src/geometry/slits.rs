use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

/// Upper bound on the number of slits a single family will materialize.
pub const MAX_MATERIALIZED: usize = 8_000_000;

/// A closed vertical slit `{x} × (y_bottom, y_top]`, or a downward ray when
/// `y_bottom` is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerticalSlit {
    pub x: f64,
    pub y_top: f64,
    #[serde(default)]
    pub y_bottom: Option<f64>,
}

impl VerticalSlit {
    pub fn ray(x: f64, y_top: f64) -> Self {
        VerticalSlit { x, y_top, y_bottom: None }
    }

    pub fn bounded(x: f64, y_bottom: f64, y_top: f64) -> Self {
        VerticalSlit { x, y_top, y_bottom: Some(y_bottom) }
    }

    pub fn map(self, scale: f64, dx: f64, dy: f64) -> Self {
        VerticalSlit {
            x: self.x * scale + dx,
            y_top: self.y_top * scale + dy,
            y_bottom: self.y_bottom.map(|b| b * scale + dy),
        }
    }
}

type Generator = dyn Fn(usize) -> Option<VerticalSlit> + Send + Sync;

struct Window {
    slits: Vec<VerticalSlit>,
    exhausted: bool,
}

/// A countable slit family generated on demand.
///
/// The generator maps an index to a slit, with `|x|` nondecreasing in the
/// index, and returns `None` once the family is finite and exhausted. Queries
/// only materialize the prefix they need, and the cached window only grows,
/// so concurrent readers never observe a shrinking family.
pub struct SlitFamily {
    label: String,
    generator: Box<Generator>,
    window: RwLock<Window>,
}

impl fmt::Debug for SlitFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlitFamily")
            .field("label", &self.label)
            .field("materialized", &self.materialized())
            .finish()
    }
}

impl SlitFamily {
    pub fn new<G>(label: impl Into<String>, generator: G) -> Arc<Self>
    where
        G: Fn(usize) -> Option<VerticalSlit> + Send + Sync + 'static,
    {
        Arc::new(SlitFamily {
            label: label.into(),
            generator: Box::new(generator),
            window: RwLock::new(Window { slits: Vec::new(), exhausted: false }),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn materialized(&self) -> usize {
        self.window.read().unwrap().slits.len()
    }

    /// The first `n` slits (fewer if the family is finite).
    pub fn prefix(&self, n: usize) -> Vec<VerticalSlit> {
        {
            let w = self.window.read().unwrap();
            if w.slits.len() >= n || w.exhausted {
                return w.slits.iter().take(n).copied().collect();
            }
        }
        let mut w = self.window.write().unwrap();
        while w.slits.len() < n && !w.exhausted {
            self.push_next(&mut w);
        }
        w.slits.iter().take(n).copied().collect()
    }

    fn covered(w: &Window, bound: f64) -> bool {
        w.exhausted || w.slits.last().is_some_and(|s| s.x.abs() > bound)
    }

    fn push_next(&self, w: &mut Window) {
        let idx = w.slits.len();
        if idx >= MAX_MATERIALIZED {
            log::warn!("slit family `{}` capped at {} slits", self.label, idx);
            w.exhausted = true;
            return;
        }
        match (self.generator)(idx) {
            Some(s) => {
                if let Some(prev) = w.slits.last() {
                    assert!(
                        s.x.abs() >= prev.x.abs(),
                        "slit family `{}` is not ordered by |x| at index {}",
                        self.label,
                        idx
                    );
                }
                w.slits.push(s);
            }
            None => w.exhausted = true,
        }
    }

    fn ensure(&self, bound: f64) {
        if Self::covered(&self.window.read().unwrap(), bound) {
            return;
        }
        let mut w = self.window.write().unwrap();
        while !Self::covered(&w, bound) {
            self.push_next(&mut w);
        }
    }

    /// Calls `f` on every slit with `x_lo <= x <= x_hi`.
    pub fn for_each_within(&self, x_lo: f64, x_hi: f64, f: &mut dyn FnMut(&VerticalSlit)) {
        let bound = x_lo.abs().max(x_hi.abs());
        self.ensure(bound);
        let w = self.window.read().unwrap();
        let end = w.slits.partition_point(|s| s.x.abs() <= bound);
        for s in &w.slits[..end] {
            if s.x >= x_lo && s.x <= x_hi {
                f(s);
            }
        }
    }
}

/// The slits removed from a base domain: a fixed list plus lazy families.
#[derive(Clone, Debug, Default)]
pub struct SlitSet {
    pub fixed: Vec<VerticalSlit>,
    pub families: Vec<Arc<SlitFamily>>,
}

impl SlitSet {
    pub fn fixed(slits: Vec<VerticalSlit>) -> Self {
        SlitSet { fixed: slits, families: Vec::new() }
    }

    pub fn with_family(mut self, family: Arc<SlitFamily>) -> Self {
        self.families.push(family);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.is_empty() && self.families.is_empty()
    }

    pub fn for_each_within(&self, x_lo: f64, x_hi: f64, f: &mut dyn FnMut(&VerticalSlit)) {
        for s in &self.fixed {
            if s.x >= x_lo && s.x <= x_hi {
                f(s);
            }
        }
        for fam in &self.families {
            fam.for_each_within(x_lo, x_hi, f);
        }
    }
}
