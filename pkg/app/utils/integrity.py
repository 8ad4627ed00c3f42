import hashlib
from typing import Union


def generate_file_hash(file_path: str, algorithm: str = "sha256") -> str:
    """Gera hash de arquivo"""
    hash_func = hashlib.new(algorithm)

    with open(file_path, "rb") as f:
        while chunk := f.read(8192):
            hash_func.update(chunk)

    return hash_func.hexdigest()


def generate_payload_hash(payload: Union[bytes, str], algorithm: str = "sha256") -> str:
    """Gera hash de um conteúdo em memória"""
    if isinstance(payload, str):
        payload = payload.encode("utf-8")
    hash_func = hashlib.new(algorithm)
    hash_func.update(payload)
    return hash_func.hexdigest()
