import json
from collections import OrderedDict

import jinja2
import pandas as pd

from trussalg.utils.debug import logger

TEXT_TEMPLATE = """
$ {{ command }}
{%- if defaults %}
defaults: {% for key, value in defaults.items() %}{% if loop.index0 > 0 %}, {% endif %}{{ key }}={{ value }}{% endfor %}
{%- endif %}
{%- for name, verdict in verdicts.items() %}
{{ "PASS" if verdict.value else "FAIL" }} {{ name }}{% if verdict.witness is not none %} (witness {{ verdict.witness }}){% endif %}
{%- endfor %}
{%- for name, text in dumps.items() %}

== {{ name }}
{{ text }}
{%- endfor %}
{%- for name, table in tables.items() %}

== {{ name }}
{{ table }}
{%- endfor %}
{%- if caveats %}

caveats: {{ caveats | join("; ") }}
{%- endif %}
""".strip()


class Verdict:
    __slots__ = ("value", "witness")

    def __init__(self, value, witness=None):
        self.value = bool(value)
        self.witness = witness


class Report:
    """
    The outcome of one command: the command echo, the defaults it chose,
    named verdicts with their witnesses, structure dumps and tables.

    Reports are deterministic given the command, its inputs and the seed; the
    order of every section is the order in which entries were added.
    """

    def __init__(self, command, defaults=None):
        self.command = command if isinstance(command, str) else " ".join(str(c) for c in command)
        self.defaults = OrderedDict(defaults or {})
        self.verdicts = OrderedDict()
        self.dumps = OrderedDict()
        self.tables = OrderedDict()
        self.caveats = []

    def __repr__(self):
        return f"<Report `{self.command}`: {'PASS' if self.passed else 'FAIL'}>"

    def add_verdict(self, name, value, witness=None):
        self.verdicts[name] = Verdict(value, witness)
        return value

    def add_dump(self, name, text):
        self.dumps[name] = text

    def add_table(self, name, table):
        self.tables[name] = table if isinstance(table, pd.DataFrame) else pd.DataFrame(table)

    def add_caveats(self, caveats):
        for caveat in caveats:
            if caveat not in self.caveats:
                self.caveats.append(caveat)

    @property
    def passed(self):
        """bool: Whether every verdict holds."""
        return all(v.value for v in self.verdicts.values())

    def as_dict(self):
        """OrderedDict: A JSON-compatible rendering with a fixed key order."""
        return OrderedDict(
            [
                ("command", self.command),
                ("defaults", OrderedDict((k, _plain(v)) for k, v in self.defaults.items())),
                (
                    "verdicts",
                    OrderedDict(
                        (name, OrderedDict([("value", v.value), ("witness", _plain(v.witness))]))
                        for name, v in self.verdicts.items()
                    ),
                ),
                ("passed", self.passed),
                ("dumps", OrderedDict(self.dumps)),
                (
                    "tables",
                    OrderedDict(
                        (name, json.loads(table.to_json(orient="records")))
                        for name, table in self.tables.items()
                    ),
                ),
                ("caveats", list(self.caveats)),
            ]
        )

    def render(self, format="text", **kwargs):  # pylint: disable=redefined-builtin
        """
        Render the report.

        Args:
            format (str): One of the keys of `FORMATTERS`.
            **kwargs (dict): Passed on to the formatter.
        """
        if format not in FORMATTERS:
            raise ValueError(f"Unknown report format '{format}'. Choose from: {', '.join(FORMATTERS)}.")
        return FORMATTERS[format](self, **kwargs).dump()


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return OrderedDict((str(k), _plain(v)) for k, v in value.items())
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if hasattr(value, "item"):
        return value.item()
    return str(value)


class ReportFormatter:
    """
    An abstract base class for report formatters.

    Attributes:
        report (Report): The report to be formatted.
    """

    def __init__(self, report, **kwargs):
        self.report = report
        self._init(**kwargs)

    def _init(self):
        pass

    def dump(self):
        """
        Returns:
            str: The formatted report.
        """
        raise NotImplementedError(f"{self.__class__.__name__} does not support formatting reports.")


class TextReportFormatter(ReportFormatter):
    """Formats a report as human readable text, through a jinja2 template."""

    def _init(self, template=TEXT_TEMPLATE):
        self.template = jinja2.Template(template)

    def dump(self):
        report = self.report
        return self.template.render(
            command=report.command,
            defaults=report.defaults,
            verdicts=report.verdicts,
            dumps=report.dumps,
            tables=OrderedDict((name, table.to_string(index=False)) for name, table in report.tables.items()),
            caveats=report.caveats,
        )


class JsonReportFormatter(ReportFormatter):
    """Formats a report as JSON, with a stable key order."""

    def _init(self, indent=2):
        self.indent = indent

    def dump(self):
        return json.dumps(self.report.as_dict(), indent=self.indent)


class TableReportFormatter(ReportFormatter):
    """
    Formats the verdicts and tables of a report as pandas tables, dropping
    structure dumps.
    """

    def _init(self, index=False):
        self.index = index

    def verdict_table(self):
        return pd.DataFrame(
            [
                {"check": name, "passed": v.value, "witness": "" if v.witness is None else str(v.witness)}
                for name, v in self.report.verdicts.items()
            ],
            columns=["check", "passed", "witness"],
        )

    def dump(self):
        blocks = [self.verdict_table().to_string(index=self.index)]
        for name, table in self.report.tables.items():
            blocks.append(f"{name}\n{table.to_string(index=self.index)}")
        if self.report.dumps:
            logger.debug("Structure dumps are not rendered in table format.")
        return "\n\n".join(blocks)


FORMATTERS = {
    "text": TextReportFormatter,
    "json": JsonReportFormatter,
    "table": TableReportFormatter,
}
