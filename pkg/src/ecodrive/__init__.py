"""ecodrive: telemetry ingestion, eco-driving scoring and gamification engine."""

__version__ = "0.1.0"
