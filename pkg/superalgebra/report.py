"""Отчёты: блоки орбит, квантования, сравнения и сертификатов в текст, LaTeX и JSON"""
import json
import logging
from collections import defaultdict

from .compare import comparison_report
from .conventions import STANDARD
from .exceptions import MalformedInput, SuperAlgebraError
from .expressions import latex, parse
from .liegroup import standard_group
from .orbits import CASES, generic_orbit, kks_form, orbit_report, polarizations
from .quantize import quantization_pairs, quantization_report
from .serializers import CertificateSerializer, ReportSerializer, report_schema

logger = logging.getLogger(__name__)

FORMATS = ('text', 'latex', 'json')
# значения под этими ключами - выражения ядра
MATH_KEYS = frozenset({'labels', 'shift', 'multiplier', 'phase', 'transverse', 'identify',
                       'variables', 'constraints', 'character'})
LATEX_SPECIAL = {'\\': r'\textbackslash{}', '{': r'\{', '}': r'\}', '_': r'\_', '#': r'\#',
                 '%': r'\%', '&': r'\&', '$': r'\$', '^': r'\^{}', '~': r'\~{}'}


def block(kind, title, data):
    return {'kind': kind, 'title': title, 'data': data}


def orbit_blocks(cases=None):
    return [block('orbit', case, orbit_report(generic_orbit(case))) for case in cases or CASES]


def symplectic_blocks(cases=None, conventions=STANDARD):
    blocks = []
    for case in cases or CASES:
        orbit = generic_orbit(case)
        blocks.append(block('symplectic', case, {
            'chart': [z.name for z in orbit.chart.coordinates],
            'omega': str(kks_form(orbit, conventions)),
            'conventions': conventions.as_dict(),
        }))
    return blocks


def polarization_blocks(cases=None):
    return [block('polarizations', case, [p.as_dict() for p in polarizations(generic_orbit(case))])
            for case in cases or CASES]


def quantization_blocks(name=None):
    return [block('quantization', f"{orbit.case}: {polarization.label}",
                  quantization_report(orbit, polarization))
            for orbit, polarization in quantization_pairs(name=name)]


def comparison_blocks():
    return [block('comparison', 'mode identifications', comparison_report())]


def certificate_blocks(certificates):
    """Сертификаты, сгруппированные по наборам"""
    by_suite = defaultdict(list)
    for certificate in certificates:
        by_suite[certificate.suite].append(certificate)
    return [block('certificates', suite, list(CertificateSerializer(items, many=True).data))
            for suite, items in by_suite.items()]


def build_report(blocks=None, certificates=None):
    if blocks is None:
        blocks = (orbit_blocks() + symplectic_blocks() + polarization_blocks()
                  + quantization_blocks() + comparison_blocks())
    blocks = list(blocks) + certificate_blocks(certificates or [])
    logger.debug(f"Report with {len(blocks)} blocks")
    return {'schema': report_schema(), 'blocks': blocks}


# --- текст ----------------------------------------------------------------------

def _text_lines(value, indent=0):
    pad = '  ' * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)):
                nested = _text_lines(item, indent + 1)
                lines.append(f"{pad}- {nested[0].strip()}" if nested else f"{pad}-")
                lines.extend(nested[1:])
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
        return lines
    return [f"{pad}{_scalar_text(value)}"]


def _scalar_text(value):
    if value in ({}, []):
        return '-'
    return str(value)


def render_text(report):
    lines = [f"schema {report['schema']}"]
    for item in report['blocks']:
        lines.append('')
        lines.append(f"== {item['kind']}: {item['title']} ==")
        lines.extend(_text_lines(item['data']))
    return '\n'.join(lines) + '\n'


# --- LaTeX ----------------------------------------------------------------------

def latex_escape(text):
    return ''.join(LATEX_SPECIAL.get(ch, ch) for ch in str(text))


def latex_value(text, ctx=None):
    """Выражение ядра в LaTeX; прочие строки - моноширинным шрифтом"""
    ctx = ctx or standard_group().ctx
    try:
        return f"${latex(parse(str(text), ctx))}$"
    except SuperAlgebraError:
        return rf"\texttt{{{latex_escape(text)}}}"


def _latex_lines(value, math=False):
    if isinstance(value, dict):
        lines = [r'\begin{description}']
        for key, item in value.items():
            nested = _latex_lines(item, math or key in MATH_KEYS)
            lines.append(rf"\item[{latex_escape(key)}] " + (nested[0] if len(nested) == 1 else ''))
            if len(nested) > 1:
                lines.extend(nested)
        lines.append(r'\end{description}')
        return lines
    if isinstance(value, list):
        if not value:
            return ['---']
        lines = [r'\begin{itemize}']
        for item in value:
            nested = _latex_lines(item, math)
            lines.append(r'\item ' + (nested[0] if len(nested) == 1 else ''))
            if len(nested) > 1:
                lines.extend(nested)
        lines.append(r'\end{itemize}')
        return lines
    if value is None:
        return ['---']
    if math and isinstance(value, str):
        return [latex_value(value)]
    return [latex_escape(value)]


def render_latex(report):
    lines = [r'\documentclass{article}', r'\usepackage{amsmath}', r'\begin{document}',
             rf"% schema {latex_escape(report['schema'])}"]
    for item in report['blocks']:
        lines.append(rf"\section*{{{latex_escape(item['kind'])}: {latex_escape(item['title'])}}}")
        lines.extend(_latex_lines(item['data']))
    lines.append(r'\end{document}')
    return '\n'.join(lines) + '\n'


# --- JSON ----------------------------------------------------------------------

def render_json(report):
    return json.dumps(report, ensure_ascii=False, indent=2, sort_keys=False)


def parse_report(text):
    """Обратное чтение JSON-отчёта с проверкой схемы"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"Report is not valid JSON: {e}")
    serializer = ReportSerializer(data=data)
    if not serializer.is_valid():
        raise MalformedInput(f"Invalid report: {serializer.errors}")
    return json.loads(json.dumps(serializer.validated_data))


RENDERERS = {'text': render_text, 'latex': render_latex, 'json': render_json}


def render(report, fmt='text'):
    if fmt not in RENDERERS:
        raise MalformedInput(f"Unknown report format {fmt!r}; choose from {', '.join(FORMATS)}")
    return RENDERERS[fmt](report)
