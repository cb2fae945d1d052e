pub mod decat;
pub mod diagram;
pub mod evalmodel;
pub mod matrix;
pub mod normalform;
pub mod presentation;
pub mod scalar;
