"""
Command surface, run configuration models and the pipeline service.

Usage:
------
    from src.cli import PipelineConfig, pipeline_service

    manifest = pipeline_service.run_pipeline(PipelineConfig(phantom="data/phantoms/default.phantom"))
"""

from .models import ConstantRow, PipelineConfig, RunManifest
from .service import Extraction, PipelineService, PreparedRun, format_constants_table, pipeline_service
from .main import build_parser, config_from_args, main
