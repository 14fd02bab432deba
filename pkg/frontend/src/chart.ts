/**
 * Progress-chart geometry: one polyline per category, adjusted accuracy
 * (a_c) against session sequence. Pure math so the chart is testable
 * without a DOM; the page renders the result as inline SVG.
 */

import type { Category, ProgressDoc, ProgressPoint } from "./types.js";

export interface ChartPoint {
  x: number;
  y: number;
  seq: number;
  value: number;
}

export interface ChartSeries {
  category: Category;
  points: ChartPoint[];
  /** SVG path ("M x y L x y …"), empty for a single point. */
  path: string;
}

export interface ChartGeometry {
  width: number;
  height: number;
  pointCount: number;
  series: ChartSeries[];
}

const PAD = 12;

function xScale(seq: number, minSeq: number, maxSeq: number, width: number): number {
  if (maxSeq === minSeq) {
    return width / 2;
  }
  return PAD + ((seq - minSeq) / (maxSeq - minSeq)) * (width - 2 * PAD);
}

function yScale(value: number, height: number): number {
  // accuracy 0 at the bottom edge, 1 at the top
  return PAD + (1 - value) * (height - 2 * PAD);
}

export function progressChart(doc: ProgressDoc, width = 480, height = 160): ChartGeometry {
  const byCategory = new Map<Category, ProgressPoint[]>();
  for (const point of doc.points) {
    const bucket = byCategory.get(point.category) ?? [];
    bucket.push(point);
    byCategory.set(point.category, bucket);
  }
  const seqs = doc.points.map((p) => p.seq);
  const minSeq = seqs.length ? Math.min(...seqs) : 0;
  const maxSeq = seqs.length ? Math.max(...seqs) : 0;

  const series: ChartSeries[] = [];
  for (const [category, points] of byCategory) {
    const ordered = [...points].sort((a, b) => a.seq - b.seq);
    const scaled = ordered.map((p) => ({
      x: xScale(p.seq, minSeq, maxSeq, width),
      y: yScale(p.a_c, height),
      seq: p.seq,
      value: p.a_c,
    }));
    const path =
      scaled.length < 2
        ? ""
        : scaled
            .map((p, i) => `${i === 0 ? "M" : "L"} ${p.x.toFixed(1)} ${p.y.toFixed(1)}`)
            .join(" ");
    series.push({ category, points: scaled, path });
  }
  return { width, height, pointCount: doc.points.length, series };
}
