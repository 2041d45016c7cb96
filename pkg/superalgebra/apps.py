from django.apps import AppConfig


class SuperalgebraConfig(AppConfig):
    name = 'superalgebra'
    verbose_name = 'Супералгебры и квантование орбит'
