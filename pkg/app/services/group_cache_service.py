import base64
import json
import logging
import os
import time
from fractions import Fraction
from typing import Any, Dict, Optional, Tuple

import numpy as np

from app.config import settings
from app.core.errors import GroupCacheError
from app.core.exact import ExactMatrix
from app.models.weyl import GENERATOR_MATRICES, GroupTable
from app.services.weyl_service import WeylService
from app.utils.integrity import generate_file_hash, generate_payload_hash
from app.utils.logger import JsonLogger

logger = logging.getLogger(__name__)

CACHE_VERSION = 2


def _encode_matrix(matrix: ExactMatrix) -> list:
    return [[str(Fraction(x)) for x in row] for row in matrix.rows]


def _decode_matrix(rows: list) -> ExactMatrix:
    return ExactMatrix([[Fraction(x) for x in row] for row in rows])


def _document_checksum(document: Dict[str, Any]) -> str:
    """sha256 do documento canônico, sem o campo checksum"""
    body = {k: v for k, v in document.items() if k != "checksum"}
    return generate_payload_hash(json.dumps(body, sort_keys=True, separators=(",", ":")))


class GroupCacheService:

    @staticmethod
    def cache_group(group: GroupTable, path: Optional[str] = None, generation_seconds: Optional[float] = None) -> str:
        """Grava a tabela do grupo em JSON versionado com checksum do documento inteiro"""
        path = path or settings.GROUP_CACHE_PATH
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)

        document: Dict[str, Any] = {
            "version": CACHE_VERSION,
            "order": group.order,
            "degree": len(group.orbit),
            "orbit": [[str(x) for x in v] for v in group.orbit],
            "generators": {name: _encode_matrix(m) for name, m in group.generators.items()},
            "permutations": base64.b64encode(group.payload()).decode("ascii"),
            "generation_seconds": generation_seconds,
        }
        document["checksum"] = _document_checksum(document)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f)

        JsonLogger.log_cache("write", path, {"order": group.order, "file_hash": generate_file_hash(path)})
        return path

    @staticmethod
    def read_cache(path: Optional[str] = None) -> Tuple[GroupTable, Dict[str, Any]]:
        """Lê e valida o cache; devolve a tabela e os metadados gravados"""
        path = path or settings.GROUP_CACHE_PATH
        try:
            with open(path, "r", encoding="utf-8") as f:
                document = json.load(f)
        except FileNotFoundError:
            raise GroupCacheError(f"Cache inexistente: {path}")
        except json.JSONDecodeError as e:
            raise GroupCacheError(f"Cache corrompido ({path}): {str(e)}")

        if not isinstance(document, dict):
            raise GroupCacheError(f"Cache corrompido ({path}): documento não é um objeto")
        if document.get("version") != CACHE_VERSION:
            raise GroupCacheError(f"Versão de cache incompatível: {document.get('version')}")
        if _document_checksum(document) != document.get("checksum"):
            raise GroupCacheError("Checksum do cache não confere")

        try:
            payload = base64.b64decode(document["permutations"], validate=True)
            degree = int(document["degree"])
            if len(payload) != degree * int(document["order"]):
                raise GroupCacheError("Tamanho das permutações não confere com a ordem")
            orbit = tuple(tuple(Fraction(x) for x in v) for v in document["orbit"])
            generators = {name: _decode_matrix(rows) for name, rows in document["generators"].items()}
            permutations = np.frombuffer(payload, dtype=np.uint8).reshape(-1, degree)
            group = GroupTable(orbit=orbit, generators=generators, permutations=permutations)
        except GroupCacheError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError, ZeroDivisionError) as e:
            raise GroupCacheError(f"Cache ilegível ({path}): {type(e).__name__}: {str(e)}")

        for name, perm in group.generator_permutations.items():
            if perm.tobytes() not in group._index:
                raise GroupCacheError(f"Gerador {name} ausente da tabela carregada")

        JsonLogger.log_cache("read", path, {"order": group.order})
        return group, {"generation_seconds": document.get("generation_seconds")}

    @staticmethod
    def load_group(path: Optional[str] = None) -> GroupTable:
        """Lê e valida o cache; levanta GroupCacheError em qualquer documento inválido"""
        return GroupCacheService.read_cache(path)[0]

    @staticmethod
    def load_or_generate(path: Optional[str] = None, refresh: bool = False) -> Tuple[GroupTable, Dict[str, Any]]:
        """Carrega do cache ou regenera (e grava) quando ausente ou corrompido"""
        path = path or settings.GROUP_CACHE_PATH
        info: Dict[str, Any] = {"path": path}
        if not refresh:
            start = time.perf_counter()
            try:
                group, metadata = GroupCacheService.read_cache(path)
                info.update(
                    source="cache",
                    seconds=time.perf_counter() - start,
                    generate_seconds=metadata["generation_seconds"],
                )
                return group, info
            except GroupCacheError as e:
                logger.warning(f"Cache do grupo descartado: {str(e)}")

        start = time.perf_counter()
        group = WeylService.generate_group(dict(GENERATOR_MATRICES))
        elapsed = time.perf_counter() - start
        info.update(source="generated", seconds=elapsed, generate_seconds=elapsed)
        try:
            GroupCacheService.cache_group(group, path, generation_seconds=elapsed)
        except OSError as e:
            logger.error(f"Erro ao gravar cache do grupo: {str(e)}")
        return group, info
