pub mod families;
pub mod registry;
pub mod run;
pub mod spec_json;
