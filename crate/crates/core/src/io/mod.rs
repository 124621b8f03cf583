//! Instance generators, file formats and rendering.

mod format;
mod gen;
mod svg;

pub use format::{
    instance_hash, parse_rational, read_instance, read_tree, write_instance, write_tree, Coord,
    InstanceFile, PointRecord, TreeFile, TreeMetadata, SCHEMA_VERSION,
};
pub use gen::{gen_convex, gen_double_chain, gen_double_chain_plus_red, gen_random};
pub use svg::render_svg;
