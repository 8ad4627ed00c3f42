#!/usr/bin/env python3
"""Script para regenerar o cache da tabela de W(E6)"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.config import settings
from app.services.group_cache_service import GroupCacheService
from app.utils.logger import setup_logging


def build_cache(path: str = None):
    """Gera o grupo a partir dos quatro geradores e grava o cache"""
    setup_logging()
    path = path or settings.GROUP_CACHE_PATH
    print(f"Gerando W(E6) em {path}...")
    group, info = GroupCacheService.load_or_generate(path, refresh=True)
    print(f"Grupo de ordem {group.order} gerado em {info['seconds']:.2f}s")


if __name__ == "__main__":
    build_cache(sys.argv[1] if len(sys.argv) > 1 else None)
