"""
SingLink
Диаграммы Ньютона поверхностных особенностей и их графы разрешения
"""

__version__ = "0.1.0"
