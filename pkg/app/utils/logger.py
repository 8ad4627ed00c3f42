import logging
import os
import sys
from logging.handlers import RotatingFileHandler
import json
from datetime import datetime
from typing import Dict, Any, Optional

from app.config import settings


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None):
    """Configura logging"""
    # Formatar
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO))

    # Evita handlers duplicados em chamadas repetidas
    for handler in list(root_logger.handlers):
        if getattr(handler, "_picard_handler", False):
            root_logger.removeHandler(handler)

    # Handler para console
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(formatter)
    console_handler._picard_handler = True
    root_logger.addHandler(console_handler)

    # Handler para arquivo
    path = log_file or settings.LOG_FILE
    if path:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = RotatingFileHandler(
            path,
            maxBytes=10485760,  # 10MB
            backupCount=10
        )
        file_handler.setFormatter(formatter)
        file_handler._picard_handler = True
        root_logger.addHandler(file_handler)


class JsonLogger:
    """Logger que gera logs em formato JSON"""

    @staticmethod
    def log_event(event_type: str, data: Dict[str, Any], level: str = "info"):
        """Log de eventos em formato JSON"""
        log_data = {
            "timestamp": datetime.utcnow().isoformat(),
            "event_type": event_type,
            "data": data,
            "level": level
        }

        logger = logging.getLogger("json_logger")

        if level == "info":
            logger.info(json.dumps(log_data, default=str))
        elif level == "warning":
            logger.warning(json.dumps(log_data, default=str))
        elif level == "error":
            logger.error(json.dumps(log_data, default=str))
        elif level == "debug":
            logger.debug(json.dumps(log_data, default=str))

    @staticmethod
    def log_check(record: Dict[str, Any]):
        """Log do resultado de uma verificação"""
        JsonLogger.log_event(
            "check",
            record,
            level="info" if record.get("status") != "fail" else "warning"
        )

    @staticmethod
    def log_cache(action: str, path: str, details: Dict[str, Any]):
        """Log de leitura/escrita do cache do grupo"""
        JsonLogger.log_event(
            "group_cache",
            {
                "action": action,
                "path": path,
                "details": details
            },
            level="info"
        )
