"""
Команды командной строки
"""

from . import diagram, graph, inverse, roundtrip

# Список всех групп команд
handlers = [diagram, graph, inverse, roundtrip]

__all__ = ["handlers"]
