"""Сериализаторы сертификатов, отчётов и файлов базовых точек"""
import re
from fractions import Fraction

from django.conf import settings
from rest_framework import serializers

from .certificates import Certificate
from .liegroup import EVEN_DUAL

RATIONAL = re.compile(r'^[+-]?\d+(/\d+)?$')
BLOCK_KINDS = ('orbit', 'symplectic', 'polarizations', 'quantization', 'comparison', 'certificates')


def report_schema():
    return str(getattr(settings, 'SUPERQUANT_REPORT_SCHEMA', '1'))


def point_lines(text):
    """Строки файла точки: (номер строки, имя, значение); '#' начинает комментарий"""
    entries = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if line.count('=') != 1:
            raise serializers.ValidationError({'text': f"Строка {number}: ожидается 'имя = p/q'."})
        name, value = (part.strip() for part in line.split('='))
        entries.append((number, name, value))
    return entries


class PointFileSerializer(serializers.Serializer):
    """Файл базовой точки: строки 'имя = p/q', пропущенные координаты равны нулю"""
    text = serializers.CharField(allow_blank=True, trim_whitespace=False)

    def validate(self, attrs):
        """Только чётные координаты двойственного пространства с рациональными значениями"""
        values = {}
        errors = []
        for number, name, value in point_lines(attrs['text']):
            if name not in EVEN_DUAL:
                errors.append(f"Строка {number}: неизвестная координата {name!r}.")
            elif name in values:
                errors.append(f"Строка {number}: координата {name} задана повторно.")
            elif not RATIONAL.match(value):
                errors.append(f"Строка {number}: значение {value!r} не является рациональным числом.")
            else:
                try:
                    values[name] = Fraction(value)
                except ZeroDivisionError:
                    errors.append(f"Строка {number}: нулевой знаменатель.")
        if errors:
            raise serializers.ValidationError({'text': errors})
        attrs['values'] = values
        return attrs


class CheckSerializer(serializers.Serializer):
    name = serializers.CharField()
    passed = serializers.BooleanField()
    witness = serializers.CharField(allow_blank=True)


class CertificateSerializer(serializers.Serializer):
    """Сериализатор сертификата проверки"""
    suite = serializers.CharField()
    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True, required=False, default='')
    witness = serializers.CharField(allow_blank=True, required=False, default='')
    expected_failure = serializers.BooleanField(required=False, default=False)
    checks = CheckSerializer(many=True, required=False, default=list)
    ok = serializers.BooleanField(read_only=True)

    def create(self, validated_data):
        validated_data['checks'] = [dict(c) for c in validated_data.get('checks', [])]
        return Certificate(**validated_data)


class BlockSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=BLOCK_KINDS)
    title = serializers.CharField()
    data = serializers.JSONField()


class ReportSerializer(serializers.Serializer):
    """Отчёт {"schema": версия, "blocks": [...]}"""
    schema = serializers.CharField()
    blocks = BlockSerializer(many=True)

    def validate_schema(self, value):
        if value != report_schema():
            raise serializers.ValidationError(f"Неподдерживаемая версия схемы {value!r}.")
        return value
