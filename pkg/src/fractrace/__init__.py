"""
Fractrace - 분수 열 반군 퍼텐셜 이론 툴킷
"""

__version__ = "0.1.0"
