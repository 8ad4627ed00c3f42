import json
import logging
import os
import sys
from typing import Optional

import click
import pandas as pd
from pydantic import ValidationError

from app.config import settings
from app.models.symplectic import NAMED_MATRICES, matrices_to_text
from app.schemas.report import VerificationReport
from app.schemas.run_config import RunConfig, Suite, ThetaConfig
from app.services.group_cache_service import GroupCacheService
from app.tasks.suite_runner import run_suite
from app.utils.logger import setup_logging

logger = logging.getLogger(__name__)

SUITE_NAMES = [s.value for s in Suite]


def _write_report(report: VerificationReport, path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(report.model_dump_json(indent=2))
    logger.info(f"Relatório gravado em {path}")


@click.group()
@click.option("--log-level", default=None, help="Nível de log (padrão: LOG_LEVEL)")
@click.option("--log-file", type=click.Path(), default=None, help="Arquivo de log rotativo")
def cli(log_level: Optional[str], log_file: Optional[str]):
    """Verificação exata e numérica da quártica-dez e de W(E6)."""
    setup_logging(log_level, log_file)


@cli.command()
@click.option("--suites", default="all", show_default=True,
              help=f"Suítes separadas por vírgula: {', '.join(SUITE_NAMES)}")
@click.option("--report", "report_path", type=click.Path(), default=settings.REPORT_PATH,
              help="Arquivo JSON do relatório")
@click.option("--cache", "cache_path", type=click.Path(), default=settings.GROUP_CACHE_PATH,
              show_default=True, help="Cache da tabela de W(E6)")
@click.option("--seed", type=int, default=settings.SAMPLE_SEED, show_default=True)
@click.option("--theta-n", type=int, default=settings.THETA_TRUNCATION, show_default=True,
              help="Raio de truncamento da série teta")
@click.option("--tol", type=float, default=settings.THETA_TOLERANCE, show_default=True,
              help="Tolerância relativa de anulamento")
@click.option("--samples", type=int, default=settings.SAMPLE_COUNT, show_default=True,
              help="Número de amostras em H_4^M")
@click.option("--slow", is_flag=True, default=settings.SLOW_CHECKS, help="Inclui verificações exaustivas")
@click.option("--refresh-cache", is_flag=True, help="Regenera a tabela do grupo")
def run(suites, report_path, cache_path, seed, theta_n, tol, samples, slow, refresh_cache):
    """Executa as suítes e imprime o relatório."""
    try:
        config = RunConfig(
            suites=suites,
            theta=ThetaConfig(truncation=theta_n, tolerance=tol, sample_count=samples),
            cache_path=cache_path,
            report_path=report_path,
            seed=seed,
            slow=slow,
            refresh_cache=refresh_cache,
        )
    except ValidationError as e:
        raise click.BadParameter(str(e))

    report = run_suite(config)
    click.echo(report.to_text())
    if config.report_path:
        _write_report(report, config.report_path)
    sys.exit(report.exit_code)


@cli.command()
@click.option("--path", type=click.Path(), default=settings.GROUP_CACHE_PATH, show_default=True)
@click.option("--refresh", is_flag=True, help="Ignora o cache existente")
def cache(path, refresh):
    """Carrega ou regenera a tabela de W(E6)."""
    group, info = GroupCacheService.load_or_generate(path, refresh=refresh)
    click.echo(f"Ordem: {group.order}")
    click.echo(f"Origem: {info['source']} ({info['seconds']:.3f}s)")
    click.echo(f"Arquivo: {info['path']}")


@cli.command()
@click.argument("names", nargs=-1)
def matrices(names):
    """Exporta as matrizes nomeadas (inteiros, linha a linha)."""
    unknown = [n for n in names if n not in NAMED_MATRICES]
    if unknown:
        raise click.BadParameter(f"Matrizes desconhecidas: {', '.join(unknown)}")
    click.echo(matrices_to_text(names or NAMED_MATRICES.keys()))


@cli.command()
@click.argument("report_path", type=click.Path(exists=True))
@click.option("--failed", is_flag=True, help="Mostra só as falhas")
def summary(report_path, failed):
    """Tabela de um relatório JSON salvo."""
    with open(report_path, "r", encoding="utf-8") as f:
        report = VerificationReport.model_validate(json.load(f))
    frame = pd.DataFrame([r.model_dump(mode="json") for r in report.checks])
    if frame.empty:
        click.echo("Relatório vazio")
        return
    frame["suite"] = frame["check_id"].str.split(".").str[0]
    if failed:
        frame = frame[frame["status"] == "fail"]
        if frame.empty:
            click.echo("Nenhuma falha")
            return
    click.echo(frame[["check_id", "status", "elapsed", "citation"]].to_string(index=False))
    totals = frame.groupby(["suite", "status"]).size().unstack(fill_value=0)
    click.echo("")
    click.echo(totals.to_string())


if __name__ == "__main__":
    cli()
