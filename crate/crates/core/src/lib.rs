//! Indoor localization with automatically built radio maps.
//!
//! The pipeline has two phases. In calibration, position fixes from a
//! reference system are paired with BLE RSS packets into position-tagged
//! signatures; an exponential path-loss model is fitted per room and anchor,
//! and a dense grid of predicted signal levels (the radio map) is
//! interpolated from those models. In normal operation, incoming RSS vectors
//! are matched against the map with a normalized Euclidean distance and a
//! position is regressed as the inverse-distance-weighted mean of the k
//! nearest map points, optionally smoothed with a trailing moving average.
//!
//! A deterministic simulator stands in for the physical radio subsystems so
//! the whole loop runs end to end without hardware.

pub mod calibration;
pub mod error;
pub mod floorplan;
pub mod geometry;
pub mod io;
pub mod localizer;
pub mod metrics;
pub mod pathloss;
pub mod radiomap;
pub mod simulator;

pub use calibration::{
    pair_signatures, signature_stats, FixSource, PairingReport, PositionFix, RssMeasurement,
    Signature,
};
pub use error::{Error, Result};
pub use floorplan::{AnchorConfig, FloorPlan, GridPoint, Room};
pub use geometry::Point2;
pub use localizer::{
    localize, signature_distance, smooth, Localizer, LocalizerConfig, MovingAverage,
    PositionEstimate,
};
pub use metrics::{ecdf, trajectory_error, EcdfPoint, ErrorStats, ReferencePath};
pub use pathloss::{
    fit_linear_ls, fit_lm, fit_room_models, predict, Fallback, FitConfig, FitResult, FitSample,
    GammaBounds, PathLossParams, RoomModelSet,
};
pub use radiomap::{build_radio_map, RadioMap, RadioMapPoint};
pub use simulator::{synth_ble, synth_uwb, synth_walk, GroundTruthScene, TruthSample, WalkSpec};
