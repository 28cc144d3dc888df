#![allow(dead_code)]

pub mod regression;
