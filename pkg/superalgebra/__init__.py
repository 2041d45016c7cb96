"""Символьный движок супералгебр и проверки квантования супергруппы 4|4."""
