"""Verificação computacional da quártica-dez X ⊂ P5 e do seu grupo de simetrias."""

__version__ = "1.0.0"
