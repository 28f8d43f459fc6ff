"""
Константы приложения
"""

EXIT_OK = 0
EXIT_NOT_REALIZABLE = 1
EXIT_INPUT_ERROR = 2


# Все перестановки координат в фиксированном порядке
PERMUTATIONS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))

# Точки, попадание которых в Γ означает класс A_{n-1}
A_SERIES_MARKERS = ((0, 1, 1), (1, 0, 1), (1, 1, 0))
