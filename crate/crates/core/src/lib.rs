//! Compiler and simulated runner for intent-driven mobile test automation.
//!
//! The pipeline is:
//!
//! 1. [`intent`] parses `.intent` files into an AST.
//! 2. [`mapping`] binds each intent keyword to a backend command through a
//!    per-app `.map` table and substitutes step arguments into it.
//! 3. [`composer`] resolves a whole intent into an [`composer::ActionPlan`]
//!    and renders an executable script from a `.tmpl` template.
//! 4. [`simulator`] runs a plan against a declarative page graph and
//!    produces a [`simulator::RunReport`].

pub mod composer;
pub mod intent;
pub mod mapping;
pub mod simulator;
mod text;
