"""Weekly analysis bundle: metrics CSV, frequency-list downloads, HTML report.

Every output is a pure function of the corpus, so re-running on unchanged
data produces byte-identical files.
"""
from __future__ import annotations

from datetime import date
from pathlib import Path

from .corpus import Corpus, export_frequency_list, monthly_summary
from .errors import DegenerateFit, EmptyCorpus
from .metrics import (
    DEFAULT_SEGMENT_LENGTH,
    DiversityRecord,
    TrendFit,
    daily_diversity,
    fit_linear_trend,
    weekly_mean,
)

METRICS_CSV = "metrics.csv"
REPORT_HTML = "report.html"


def diversity_records(
    corpus: Corpus, segment_length: int = DEFAULT_SEGMENT_LENGTH
) -> tuple[list[DiversityRecord], list[date]]:
    """Per-day records for all non-empty days, plus the list of empty days."""
    records = []
    empty_days = []
    for day in corpus.dates:
        table = corpus.tables[day]
        if table.token_total == 0:
            empty_days.append(day)
            continue
        records.append(daily_diversity(table, segment_length))
    return records, empty_days


def write_metrics_csv(records: list[DiversityRecord], path: Path) -> None:
    lines = ["date,redundancy,msttr,top100_share"]
    for rec in records:
        msttr_cell = "" if rec.msttr is None else f"{rec.msttr:.6f}"
        lines.append(
            f"{rec.day.isoformat()},{rec.redundancy:.6f},{msttr_cell},{rec.top100_share:.6f}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


# --- hand-rolled SVG line charts (deterministic output) --------------------


def _format_value(value: float) -> str:
    text = f"{value:.6g}"
    return text


def _svg_line_chart(
    title: str,
    series: list[tuple[date, float]],
    width: int = 720,
    height: int = 220,
    stroke: str = "#1f6fb2",
    overlay_segments: list[tuple[date, date, float]] | None = None,
) -> str:
    """A minimal polyline chart; overlay segments draw horizontal bars (weekly means)."""
    pad_left, pad_right, pad_top, pad_bottom = 60, 15, 28, 30
    plot_w = width - pad_left - pad_right
    plot_h = height - pad_top - pad_bottom
    if not series:
        return f'<svg width="{width}" height="{height}"><text x="10" y="20">{title}: no data</text></svg>'
    days = [d for d, _ in series]
    values = [v for _, v in series]
    d0, d1 = min(days), max(days)
    span_days = max((d1 - d0).days, 1)
    v_min, v_max = min(values), max(values)
    if v_min == v_max:
        v_min, v_max = v_min - 0.5, v_max + 0.5
    v_span = v_max - v_min

    def x_of(day: date) -> float:
        return pad_left + plot_w * (day - d0).days / span_days

    def y_of(value: float) -> float:
        return pad_top + plot_h * (1.0 - (value - v_min) / v_span)

    points = " ".join(f"{x_of(d):.2f},{y_of(v):.2f}" for d, v in series)
    parts = [
        f'<svg width="{width}" height="{height}" xmlns="http://www.w3.org/2000/svg">',
        f'<text x="{pad_left}" y="16" font-size="13" font-weight="bold">{title}</text>',
        f'<rect x="{pad_left}" y="{pad_top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#999"/>',
        f'<text x="{pad_left - 6}" y="{pad_top + 10}" font-size="10" text-anchor="end">{_format_value(v_max)}</text>',
        f'<text x="{pad_left - 6}" y="{pad_top + plot_h}" font-size="10" text-anchor="end">{_format_value(v_min)}</text>',
        f'<text x="{pad_left}" y="{height - 8}" font-size="10">{d0.isoformat()}</text>',
        f'<text x="{width - pad_right}" y="{height - 8}" font-size="10" text-anchor="end">{d1.isoformat()}</text>',
        f'<polyline points="{points}" fill="none" stroke="{stroke}" stroke-width="1.5"/>',
    ]
    for seg_from, seg_to, value in overlay_segments or []:
        parts.append(
            f'<line x1="{x_of(seg_from):.2f}" y1="{y_of(value):.2f}" '
            f'x2="{x_of(seg_to):.2f}" y2="{y_of(value):.2f}" stroke="#c44" stroke-width="2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def _trend_table(fit: TrendFit | None) -> str:
    if fit is None:
        return "<p>Not enough days for a trend fit (need at least 3).</p>"
    t_cell = "n/a" if fit.t_stat is None else f"{fit.t_stat:.3f}"
    p_cell = "n/a" if fit.p_value is None else f"{fit.p_value:.3f}"
    return (
        "<table><tr><th>slope (tokens/day)</th><th>intercept</th><th>SE</th>"
        "<th>t</th><th>p</th><th>n</th></tr>"
        f"<tr><td>{fit.slope:.2f}</td><td>{fit.intercept:.2f}</td>"
        f"<td>{fit.slope_se:.2f}</td><td>{t_cell}</td><td>{p_cell}</td><td>{fit.n}</td></tr>"
        "</table>"
    )


def write_report_html(
    corpus: Corpus,
    records: list[DiversityRecord],
    empty_days: list[date],
    fit: TrendFit | None,
    path: Path,
    as_of: date,
    segment_length: int,
) -> None:
    size_series = [
        (day, float(corpus.tables[day].token_total))
        for day in corpus.dates
        if corpus.tables[day].token_total > 0
    ]
    start = corpus.first_date
    weekly = weekly_mean(size_series, start) if start else []
    overlay = []
    for idx, mean_value in weekly:
        week_days = [d for d, _ in size_series if (d - start).days // 7 + 1 == idx]
        overlay.append((min(week_days), max(week_days), mean_value))

    summary = monthly_summary(corpus)
    month_rows = "".join(
        f"<tr><td>{label}</td><td>{tokens}</td><td>{share * 100:.1f}&nbsp;%</td><td>{types}</td></tr>"
        for label, tokens, share, types in summary.rows
    )
    empty_note = ""
    if empty_days:
        day_list = ", ".join(d.isoformat() for d in empty_days)
        empty_note = f"<p>Days with no tokens (absent from the metrics CSV): {day_list}</p>"

    red_series = [(r.day, r.redundancy) for r in records]
    msttr_series = [(r.day, r.msttr) for r in records if r.msttr is not None]
    top_series = [(r.day, r.top100_share) for r in records]

    html_doc = f"""<!DOCTYPE html>
<html lang="en">
<head><meta charset="utf-8"><title>Vocabulary diversity report</title>
<style>body{{font-family:sans-serif;max-width:820px;margin:2em auto;}}table{{border-collapse:collapse;}}td,th{{border:1px solid #999;padding:4px 10px;}}</style>
</head>
<body>
<h1>Vocabulary diversity report</h1>
<p>Data through <strong>{as_of.isoformat()}</strong>; corpus covers {corpus.first_date} to {corpus.last_date},
{corpus.token_total} tokens over {corpus.type_total} types. MSTTR segment length: {segment_length} tokens.</p>
{empty_note}
<h2>Daily corpus size</h2>
{_svg_line_chart("Tokens per day (red bars: weekly means)", size_series, stroke="#444", overlay_segments=overlay)}
<h3>Linear trend of daily size</h3>
{_trend_table(fit)}
<h2>Monthly corpus measures</h2>
<table><tr><th>Month</th><th>Tokens</th><th>Share</th><th>Types</th></tr>{month_rows}</table>
<h2>Diversity measures</h2>
{_svg_line_chart("Redundancy", red_series)}
{_svg_line_chart(f"MSTTR ({segment_length}-token segments)", msttr_series, stroke="#2e8b57")}
{_svg_line_chart("Top-100 token share", top_series, stroke="#b2561f")}
<p>Downloads: <a href="metrics.csv">daily metric values</a>, daily and weekly unigram frequency lists
(<code>daily-unigrams-&lt;date&gt;.tsv</code>, <code>weekly-unigrams-&lt;date&gt;.tsv</code>).</p>
</body>
</html>
"""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(html_doc)


def generate_report(
    corpus: Corpus,
    dest: Path,
    segment_length: int = DEFAULT_SEGMENT_LENGTH,
    as_of: date | None = None,
) -> list[Path]:
    """Write the full analysis bundle into ``dest``; returns written paths."""
    if corpus.token_total == 0:
        raise EmptyCorpus("cannot report on an empty corpus")
    dest.mkdir(parents=True, exist_ok=True)
    records, empty_days = diversity_records(corpus, segment_length)
    written = []

    metrics_path = dest / METRICS_CSV
    write_metrics_csv(records, metrics_path)
    written.append(metrics_path)

    written.extend(export_frequency_list(corpus, dest, "daily", "unigram"))
    written.extend(export_frequency_list(corpus, dest, "weekly", "unigram"))

    size_series = [(r.day, corpus.tables[r.day].token_total) for r in records]
    try:
        fit = fit_linear_trend(size_series)
    except DegenerateFit:
        fit = None
    report_path = dest / REPORT_HTML
    write_report_html(
        corpus,
        records,
        empty_days,
        fit,
        report_path,
        as_of=as_of or corpus.last_date,
        segment_length=segment_length,
    )
    written.append(report_path)
    return written
