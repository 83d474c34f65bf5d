// compare.csv -> human-readable markdown report.

import * as fs from 'fs';

import { Table, num, readCsv, requireColumns } from './csv.js';

const TOTAL_COLUMNS = ['regime', 'floorSum', 'floorMean', 'cumulativeEmissions',
                       'meanReturn', 'finalTAT'] as const;

function formatNumber(x: number): string {
  // Six significant digits, trailing zeros trimmed (24.3 stays 24.3).
  return String(Number(x.toPrecision(6)));
}

export function buildSummary(table: Table): string {
  requireColumns(table, [...TOTAL_COLUMNS]);
  const deltaColumns = table.headers.filter((h) => h.startsWith('deltaReturn_'));
  const lines: string[] = [];
  lines.push('# Regime comparison');
  lines.push('');
  lines.push('| regime | floor sum | floor mean | cumulative emissions | mean return | final tAT |');
  lines.push('| --- | ---: | ---: | ---: | ---: | ---: |');
  for (const row of table.rows) {
    const cells = [
      row.regime,
      formatNumber(num(row, 'floorSum', table.path)),
      formatNumber(num(row, 'floorMean', table.path)),
      formatNumber(num(row, 'cumulativeEmissions', table.path)),
      formatNumber(num(row, 'meanReturn', table.path)),
      formatNumber(num(row, 'finalTAT', table.path)),
    ];
    lines.push(`| ${cells.join(' | ')} |`);
  }
  if (deltaColumns.length > 0 && table.rows.length > 0) {
    const baseline = table.rows[0].regime;
    lines.push('');
    lines.push(`## Per-region return deltas vs ${baseline}`);
    lines.push('');
    const header = ['region', ...table.rows.map((r) => r.regime)];
    lines.push(`| ${header.join(' | ')} |`);
    lines.push(`| --- | ${table.rows.map(() => '---:').join(' | ')} |`);
    for (const column of deltaColumns) {
      const region = column.slice('deltaReturn_'.length);
      const cells = table.rows.map((row) => formatNumber(num(row, column, table.path)));
      lines.push(`| ${region} | ${cells.join(' | ')} |`);
    }
  }
  return lines.join('\n') + '\n';
}

export function summarize(inputPath: string, outPath: string): string {
  const markdown = buildSummary(readCsv(inputPath));
  fs.writeFileSync(outPath, markdown);
  return markdown;
}
