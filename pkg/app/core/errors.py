"""Erros de domínio da verificação.

Todos derivam de ValueError, como o resto do código espera.
"""


class SingularMatrixError(ValueError):
    """Matriz singular onde se exige inversa"""


class VariableMismatchError(ValueError):
    """Polinômios com conjuntos de variáveis diferentes"""


class MissingAssignmentError(ValueError):
    """Substituição sem valor para uma variável usada"""


class NotSymplecticError(ValueError):
    """Matriz fora de Sp(8,Z)"""


class NotInCentralizerError(ValueError):
    """Matriz não comuta com M"""


class KernelRankError(ValueError):
    """Núcleo com posto inesperado"""


class NotARootError(ValueError):
    """Vetor com b(a, a) != 2"""


class GroupMembershipError(ValueError):
    """Elemento fora do grupo gerado"""


class EigenspaceDimensionError(ValueError):
    """Autoespaço com dimensão inesperada"""


class InvalidSiegelPointError(ValueError):
    """Matriz fora do semiespaço de Siegel"""


class ConvergenceError(ValueError):
    """Série teta truncada não convergiu"""


class GroupCacheError(ValueError):
    """Arquivo de cache do grupo inválido ou corrompido"""


class IdentityFailure(ValueError):
    """Identidade exata que deveria valer falhou"""
