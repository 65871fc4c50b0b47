//! Named Conway patterns run as `(2, 5, 3)` games on a Moore-neighborhood
//! torus.

use std::str::FromStr;

use crate::engine::{simulate, GameParams, LifePattern};
use crate::error::{Error, Result};
use crate::generators::make_grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConwayPattern {
    Blinker,
    Block,
    Glider,
}

impl ConwayPattern {
    /// Live cells `(x, y)` relative to the pattern's top-left corner, `y`
    /// growing downward.
    pub fn cells(&self) -> &'static [(usize, usize)] {
        match self {
            ConwayPattern::Blinker => &[(0, 1), (1, 1), (2, 1)],
            ConwayPattern::Block => &[(0, 0), (1, 0), (0, 1), (1, 1)],
            // travels one cell right and one down every 4 generations
            ConwayPattern::Glider => &[(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConwayPattern::Blinker => "blinker",
            ConwayPattern::Block => "block",
            ConwayPattern::Glider => "glider",
        }
    }
}

impl FromStr for ConwayPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blinker" => Ok(ConwayPattern::Blinker),
            "block" => Ok(ConwayPattern::Block),
            "glider" => Ok(ConwayPattern::Glider),
            _ => Err(Error::InvalidArgument(format!(
                "unknown pattern {s:?} (expected blinker, block or glider)"
            ))),
        }
    }
}

/// Parse `WxH`.
pub fn parse_grid_size(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("grid must look like 8x8, got {s:?}"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

/// Pattern with its corner at `(1, 1)` on a `width x height` torus.
pub fn place(pattern: ConwayPattern, width: usize, height: usize) -> Result<LifePattern> {
    LifePattern::from_vertices(
        width * height,
        pattern
            .cells()
            .iter()
            .map(|&(x, y)| ((y + 1) % height) * width + (x + 1) % width),
    )
}

/// `p` shifted by `(dx, dy)` with wraparound.
pub fn translate(p: &LifePattern, width: usize, height: usize, dx: usize, dy: usize) -> LifePattern {
    let cells = p.alive().map(|v| {
        let (x, y) = (v % width, v / width);
        ((y + dy) % height) * width + (x + dx) % width
    });
    LifePattern::from_vertices(width * height, cells).expect("translated cell in range")
}

fn translation_between(
    from: &LifePattern,
    to: &LifePattern,
    width: usize,
    height: usize,
) -> Option<(usize, usize)> {
    if from.population() != to.population() {
        return None;
    }
    (0..height)
        .flat_map(|dy| (0..width).map(move |dx| (dx, dy)))
        .find(|&(dx, dy)| translate(from, width, height, dx, dy) == *to)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayReport {
    pub pattern: ConwayPattern,
    pub width: usize,
    pub height: usize,
    /// Step at which the initial pattern first recurs exactly.
    pub period: usize,
    /// First step `t` whose pattern is the initial one moved by a non-zero
    /// `(dx, dy)`, if the pattern travels.
    pub translation: Option<(usize, usize, usize)>,
}

/// Run `pattern` on a `width x height` torus under `(2, 5, 3)` until it
/// repeats.
pub fn run_pattern(pattern: ConwayPattern, width: usize, height: usize) -> Result<ConwayReport> {
    let g = make_grid(width, height, true)?;
    let seed = place(pattern, width, height)?;
    let cap = 4 * width * height + 8;
    let traj = simulate(&g, &seed, GameParams::CONWAY, cap)?;
    let period = match traj.outcome {
        crate::engine::Outcome::Cycled { entry: 0, repeat_at } => repeat_at,
        other => {
            return Err(Error::InvalidArgument(format!(
                "{} on {width}x{height} does not return to its initial state: {other:?}",
                pattern.name()
            )))
        }
    };
    let translation = traj.patterns[1..period].iter().enumerate().find_map(|(i, p)| {
        translation_between(&seed, p, width, height)
            .filter(|&d| d != (0, 0))
            .map(|(dx, dy)| (i + 1, dx, dy))
    });
    Ok(ConwayReport {
        pattern,
        width,
        height,
        period,
        translation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blinker_period_two() {
        let r = run_pattern(ConwayPattern::Blinker, 5, 5).unwrap();
        assert_eq!(r.period, 2);
        assert_eq!(r.translation, None);
    }

    #[test]
    fn block_still_life() {
        let r = run_pattern(ConwayPattern::Block, 4, 4).unwrap();
        assert_eq!(r.period, 1);
    }

    #[test]
    fn glider_on_eight_torus() {
        let r = run_pattern(ConwayPattern::Glider, 8, 8).unwrap();
        assert_eq!(r.period, 32);
        assert_eq!(r.translation, Some((4, 1, 1)));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_grid_size("5x7").unwrap(), (5, 7));
        assert!(parse_grid_size("5by7").is_err());
        assert_eq!("glider".parse::<ConwayPattern>().unwrap(), ConwayPattern::Glider);
        assert!("pulsar".parse::<ConwayPattern>().is_err());
    }
}
