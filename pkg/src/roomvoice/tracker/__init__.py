from roomvoice.tracker.geometry import (
    PanoramaGeometry,
    azimuth_of_box,
    horizontal_segments,
    iou_wrap,
)
from roomvoice.tracker.core import (
    CONFIRMED,
    DELETED,
    LOST,
    TENTATIVE,
    Detection,
    LifecycleEvent,
    PanoramaTracker,
    Track,
    TrackerConfig,
    TrackerSnapshot,
    associate,
    cosine_similarity,
    resolve_ambiguity,
)
from roomvoice.tracker.replay import format_detection, load_detections, parse_detections

__all__ = [
    "PanoramaGeometry", "azimuth_of_box", "horizontal_segments", "iou_wrap",
    "CONFIRMED", "DELETED", "LOST", "TENTATIVE",
    "Detection", "LifecycleEvent", "PanoramaTracker", "Track", "TrackerConfig",
    "TrackerSnapshot", "associate", "cosine_similarity", "resolve_ambiguity",
    "format_detection", "load_detections", "parse_detections",
]
