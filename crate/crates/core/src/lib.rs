pub mod algebra;
pub mod chart;
pub mod homog;
pub mod io;
pub mod props;
