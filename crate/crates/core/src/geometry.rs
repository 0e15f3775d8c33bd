//! Chord and dwell-time geometry of a user crossing a circular cell.
//!
//! A user enters a cell of radius `R` heading at angle `theta` from the line
//! joining the entry point to the cell center. Its path through the cell is a
//! chord of length `2R cos(theta)`, and the time it can interact with the
//! cell is that chord divided by its speed.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// One crossing of a circular cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingGeometry {
    radius: f64,
    theta: f64,
    speed: f64,
}

impl CrossingGeometry {
    pub fn new(radius: f64, theta: f64, speed: f64) -> Result<Self> {
        check_radius("CrossingGeometry", radius)?;
        check_theta("CrossingGeometry", theta)?;
        check_speed("CrossingGeometry", speed)?;
        Ok(Self {
            radius,
            theta,
            speed,
        })
    }

    pub fn chord(&self) -> f64 {
        2.0 * self.radius * self.theta.cos()
    }

    pub fn interaction_time(&self) -> f64 {
        self.chord() / self.speed
    }
}

fn check_radius(op: &'static str, radius: f64) -> Result<()> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("radius must be positive, got {radius}"),
        ))
    }
}

fn check_theta(op: &'static str, theta: f64) -> Result<()> {
    if theta.abs() < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("|theta| must be below pi/2, got {theta}"),
        ))
    }
}

fn check_speed(op: &'static str, speed: f64) -> Result<()> {
    if speed.is_finite() && speed > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("speed must be positive, got {speed}"),
        ))
    }
}

/// Length of the chord a straight path cuts through a circle of radius `radius`.
pub fn chord_length(radius: f64, theta: f64) -> Result<f64> {
    check_radius("chord_length", radius)?;
    check_theta("chord_length", theta)?;
    Ok(2.0 * radius * theta.cos())
}

/// Time a user moving at `speed` m/s spends inside the cell.
pub fn interaction_time(radius: f64, theta: f64, speed: f64) -> Result<f64> {
    check_speed("interaction_time", speed)?;
    Ok(chord_length(radius, theta)? / speed)
}

/// Density of the chord length `d` when the entry angle is uniform on
/// (-pi/2, pi/2). Singular at `d = 2R`, so that point is rejected.
pub fn chord_pdf(d: f64, radius: f64) -> Result<f64> {
    check_radius("chord_pdf", radius)?;
    if !(0.0..2.0 * radius).contains(&d) {
        return Err(Error::domain(
            "chord_pdf",
            format!(
                "chord length must lie in [0, 2R) = [0, {}), got {d}",
                2.0 * radius
            ),
        ));
    }
    let u = d / (2.0 * radius);
    Ok(1.0 / (PI * radius * (1.0 - u * u).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Visitor {
    Candidate,
    TemporaryGuest,
}

/// A user is a handover candidate only if it stays strictly longer than the
/// handover preparation time. Equality counts as a temporary guest.
pub fn classify_visitor(interaction_time: f64, prep_time: f64) -> Visitor {
    if interaction_time > prep_time {
        Visitor::Candidate
    } else {
        Visitor::TemporaryGuest
    }
}
