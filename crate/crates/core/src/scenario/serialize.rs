use std::fmt::Write;

use super::{Scenario, Tier};

/// Deterministic CSV dump in three sections: cells, users, links.
pub(super) fn scenario_csv(s: &Scenario) -> String {
    let mut out = String::new();
    out.push_str("# cells\nid,tier,x,y,power_dbm,coverage_radius,hf_radius,quota\n");
    for c in s.cells() {
        let tier = match c.tier {
            Tier::Macro => "macro",
            Tier::Pico => "pico",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            c.id.0,
            tier,
            c.position.x,
            c.position.y,
            c.power_dbm,
            c.coverage_radius,
            c.hf_radius,
            c.quota
        );
    }

    out.push_str("# users\nid,x,y,speed,device,screen,target_rate,urgency_ms,alpha,beta,lambda\n");
    for u in s.users() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            u.id.0,
            u.position.x,
            u.position.y,
            u.speed,
            u.device,
            u.screen,
            u.target_rate,
            u.urgency_ms,
            u.shape.alpha,
            u.shape.beta,
            u.shape.lambda
        );
    }

    out.push_str("# gains\nuser,cell,theta,gain\n");
    for (u, row) in s.users().iter().zip(s.gains()) {
        for (j, g) in row.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{}", u.id.0, j, u.directions[j], g);
        }
    }
    out
}
