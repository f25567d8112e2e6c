pub mod algebra;
pub mod catalog;
pub mod covering;
pub mod gassmann;
pub mod schreier;
pub mod search;
pub mod specfile;
pub mod spectra;
