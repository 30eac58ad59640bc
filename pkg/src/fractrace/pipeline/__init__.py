"""
Pipeline 모듈
"""

from fractrace.pipeline.graph import FractracePipeline

__all__ = ["FractracePipeline"]
