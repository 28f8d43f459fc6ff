"""
Точная целочисленная арифметика решётки Z^3
"""

from enum import Enum
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from app.utils.exceptions import ArithmeticContractError

IVec3 = Tuple[int, int, int]
Rat = Fraction

E1: IVec3 = (1, 0, 0)
E2: IVec3 = (0, 1, 0)
E3: IVec3 = (0, 0, 1)
UNIT_VECTORS: Tuple[IVec3, IVec3, IVec3] = (E1, E2, E3)


class PlaneSide(str, Enum):
    """Результат теста расположения рёбер двух соседних треугольников"""

    SAME = "same-plane"
    OTHER = "other-plane"


def vec(x: int, y: int, z: int) -> IVec3:
    return (int(x), int(y), int(z))


def add(a: IVec3, b: IVec3) -> IVec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a: IVec3, b: IVec3) -> IVec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def scale(k: int, a: IVec3) -> IVec3:
    return (k * a[0], k * a[1], k * a[2])


def dot(a: Sequence, b: Sequence):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def gcd3(v: Sequence[int]) -> int:
    """НОД модулей координат; gcd3(0,0,0) = 0"""
    return gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2]))


def primitive(v: IVec3) -> IVec3:
    """Примитивный вектор того же направления"""
    g = gcd3(v)
    if g == 0:
        raise ArithmeticContractError("Нулевой вектор не имеет примитивного представителя")
    return (v[0] // g, v[1] // g, v[2] // g)


def cross(a: IVec3, b: IVec3) -> IVec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def face_det(f1: IVec3, f2: IVec3) -> int:
    """Детерминант t пары нормалей: НОД координат векторного произведения"""
    t = gcd3(cross(f1, f2))
    if t == 0:
        raise ArithmeticContractError(f"Параллельные нормали {f1} и {f2}")
    return t


def segment_points(a: IVec3, b: IVec3) -> List[IVec3]:
    """Все точки решётки на отрезке [a, b], начиная с a"""
    d = sub(b, a)
    g = gcd3(d)
    if g == 0:
        return [a]
    step = (d[0] // g, d[1] // g, d[2] // g)
    return [add(a, scale(k, step)) for k in range(g + 1)]


def comb_area(vertices: Sequence[IVec3]) -> int:
    """
    Комбинаторная площадь g = 2·#внутренних + #граничных - 2.

    Для многоугольника в плоскости с примитивной нормалью n сумма
    векторных произведений соседних вершин равна g·n.
    """
    if len(vertices) < 3:
        raise ArithmeticContractError("Многоугольник должен иметь хотя бы три вершины")
    total = (0, 0, 0)
    for i, v in enumerate(vertices):
        total = add(total, cross(v, vertices[(i + 1) % len(vertices)]))
    g = gcd3(total)
    if g == 0:
        raise ArithmeticContractError(f"Вырожденный многоугольник {list(vertices)}")
    return g


def neg_cont_frac(t: int, s: int) -> List[int]:
    """Разложение t/s в отрицательную цепную дробь [b_1, ..., b_k], b_i ≥ 2"""
    if not 0 < s < t:
        raise ArithmeticContractError(f"Нужно 0 < s < t, получено t={t}, s={s}")
    result = []
    while s > 0:
        b = -(-t // s)
        result.append(b)
        t, s = s, b * s - t
    return result


def cont_frac_value(weights: Sequence[int]) -> Fraction:
    """Значение b_1 - 1/(b_2 - 1/(...))"""
    if not weights:
        raise ArithmeticContractError("Пустая цепная дробь")
    value = Fraction(weights[-1])
    for b in reversed(weights[:-1]):
        value = b - 1 / value
    return value


def positive_orientation(v: IVec3) -> IVec3:
    """Выбор знака, при котором все ненулевые координаты положительны"""
    if all(x >= 0 for x in v):
        return v
    if all(x <= 0 for x in v):
        return scale(-1, v)
    raise ArithmeticContractError(f"Вектор {v} не имеет знакоопределённого представителя")


def empty_triangle_normal(a: IVec3, b: IVec3, c: IVec3) -> IVec3:
    """Примитивная нормаль пустого треугольника с положительными координатами"""
    normal = cross(sub(b, a), sub(c, a))
    g = gcd3(normal)
    if g == 0:
        raise ArithmeticContractError(f"Вырожденный треугольник {a}, {b}, {c}")
    if g != 1:
        raise ArithmeticContractError(
            f"Треугольник {a}, {b}, {c} не пуст: комбинаторная площадь {g}"
        )
    normal = positive_orientation(normal)
    if min(normal) <= 0:
        raise ArithmeticContractError(f"Нормаль {normal} не строго положительна")
    return normal


def edge_vector(f1: IVec3, f2: IVec3, m: int) -> IVec3:
    """Вектор общего ребра граней с нормалями f1, f2 и кратностью m"""
    c = cross(f1, f2)
    t = gcd3(c)
    if t == 0:
        raise ArithmeticContractError(f"Параллельные нормали {f1} и {f2}")
    return (m * c[0] // t, m * c[1] // t, m * c[2] // t)


def det_via_vertex(a: IVec3, f_adj: IVec3, m: int, g: int) -> int:
    """Детерминант ребра через третью вершину треугольника: (m/g)·<a, F>"""
    numerator = m * dot(a, f_adj)
    if numerator <= 0 or numerator % g:
        raise ArithmeticContractError(
            f"Несогласованные данные: m·<a,F> = {numerator}, g = {g}"
        )
    return numerator // g


def crossing_edge_det(f_compact: IVec3) -> int:
    """Детерминант пересекающего ребра [(a,0,c),(0,1,b)]: третья координата нормали"""
    if f_compact[2] <= 0:
        raise ArithmeticContractError(f"Третья координата нормали {f_compact} не положительна")
    return f_compact[2]


def plane_side_test(leg_det_a: int, leg_det_b: int, t: int) -> PlaneSide:
    """Лежат ли рёбра двух соседних треугольников на одной координатной плоскости"""
    same = leg_det_a == leg_det_b and t % leg_det_a == 0
    other = gcd(gcd(leg_det_a, leg_det_b), t) == 1
    if same == other:
        raise ArithmeticContractError(
            f"Тест плоскостей неразрешим для ({leg_det_a}, {leg_det_b}, {t})"
        )
    return PlaneSide.SAME if same else PlaneSide.OTHER


def permute(v: Sequence, perm: Sequence[int]) -> IVec3:
    """Перестановка координат: i-я координата результата равна v[perm[i]]"""
    return (v[perm[0]], v[perm[1]], v[perm[2]])


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
