// CSV ingestion for climneg artifacts, with named-column validation.

import * as fs from 'fs';
import Papa from 'papaparse';

export interface Table {
  path: string;
  headers: string[];
  rows: Record<string, string>[];
}

export function readCsv(path: string): Table {
  if (!fs.existsSync(path)) {
    throw new Error(`input file not found: ${path}`);
  }
  const text = fs.readFileSync(path, 'utf8');
  const result = Papa.parse<Record<string, string>>(text, {
    header: true,
    delimiter: ',',
    skipEmptyLines: true,
    transformHeader: (h: string) => h.trim(),
  });
  if (result.errors.length > 0) {
    const first = result.errors[0];
    throw new Error(`cannot parse ${path}: ${first.message} (row ${first.row})`);
  }
  return {
    path,
    headers: result.meta.fields ?? [],
    rows: result.data,
  };
}

/** Throws an error naming the first missing column. */
export function requireColumns(table: Table, columns: string[]): void {
  for (const column of columns) {
    if (!table.headers.includes(column)) {
      throw new Error(`missing column '${column}' in ${table.path}`);
    }
  }
}

export function num(row: Record<string, string>, column: string, path: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new Error(`non-numeric value '${row[column]}' in column '${column}' of ${path}`);
  }
  return value;
}
