// SPDX-License-Identifier: Apache-2.0

mod dynamics;
mod phase;
mod register;
mod sphere;
mod sweep;
mod validate;

use crate::args::{Cli, Command};
use crate::config::Settings;
use crate::error::{bad_input, CliResult};

pub fn run(cli: Cli) -> CliResult<()> {
    let settings = Settings::load(cli.common)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.workers()?)
        .build()
        .map_err(|e| bad_input(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Dynamics(args) => dynamics::run(&settings, &args),
        Command::PhaseDiagram(args) => phase::run(&settings, &args),
        Command::SphereMap(args) => sphere::run(&settings, &args),
        Command::GammaSweep(args) => sweep::run(&settings, &args),
        Command::Register(args) => register::run(&settings, &args),
        Command::Validate => validate::run(&settings),
    })
}
