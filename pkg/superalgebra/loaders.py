"""Загрузка YAML-фикстур: контекст символов, группа и эталонные формулы"""
import logging
from functools import lru_cache
from pathlib import Path

import yaml
from django.conf import settings

from .exceptions import MalformedInput
from .symkernel import Parity, SymbolContext, register_context

logger = logging.getLogger(__name__)

DEFAULT_FIXTURES_DIR = Path(__file__).resolve().parent / 'fixtures'


def fixtures_dir():
    configured = getattr(settings, 'SUPERQUANT_FIXTURES_DIR', '') if settings.configured else ''
    return Path(configured) if configured else DEFAULT_FIXTURES_DIR


def load_yaml(name):
    """Чтение YAML-файла из каталога фикстур"""
    path = fixtures_dir() / name
    try:
        with open(path, encoding='utf-8') as stream:
            data = yaml.safe_load(stream)
    except FileNotFoundError:
        logger.error(f"Fixture {path} not found")
        raise MalformedInput(f"Fixture {path} not found")
    except yaml.YAMLError as e:
        logger.error(f"Error parsing YAML fixture {path}: {e}")
        raise MalformedInput(f"Invalid YAML in {path}: {e}")
    if not isinstance(data, dict):
        raise MalformedInput(f"Fixture {path} must contain a mapping")
    return data


def _names(entries):
    names = []
    for entry in entries or []:
        names.extend(str(entry).split())
    return names


def build_context(spec):
    """Контекст символов из раздела ``context`` фикстуры"""
    ctx = SymbolContext(spec.get('name', 'default'))
    invertible = set(spec.get('invertible', []))
    latex = spec.get('latex', {}) or {}
    for name in _names(spec.get('even')):
        ctx.declare(name, Parity.EVEN, invertible=name in invertible, latex=latex.get(name, ''))
    for name in _names(spec.get('odd')):
        ctx.declare(name, Parity.ODD, latex=latex.get(name, ''))
    pools = spec.get('pools', {}) or {}
    for key, parity in (('even', Parity.EVEN), ('odd', Parity.ODD)):
        pool = pools.get(key)
        if pool:
            ctx.declare_many([f"{pool['prefix']}{i}" for i in range(int(pool['count']))], parity)
    return ctx.freeze()


@lru_cache(maxsize=None)
def group_fixture(name='heisenberg44.yaml'):
    return load_yaml(name)


@lru_cache(maxsize=None)
def standard_context(name='heisenberg44.yaml'):
    ctx = build_context(group_fixture(name)['context'])
    register_context(ctx)
    logger.debug(f"Loaded symbol context {ctx.name}")
    return ctx


@lru_cache(maxsize=None)
def displays(name='displays.yaml'):
    return load_yaml(name)


def pool(ctx, parity, count, offset=0):
    """Свежие символы-коэффициенты из пула"""
    prefix = 'q' if Parity.parse(parity) == Parity.ODD else 'c'
    return [ctx.scalar(f"{prefix}{offset + i}") for i in range(count)]
