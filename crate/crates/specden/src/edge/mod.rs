//! Soft and hard edge solutions.
