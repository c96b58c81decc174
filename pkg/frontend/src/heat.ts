/** White-to-red heat coloring for attention weights and saliency pixels. */

export type Rgb = [number, number, number];

/**
 * Map a weight in [0, 1] to a color on the white (255,255,255) → red (255,0,0)
 * line. Out-of-range or non-finite weights are clamped into [0, 1].
 */
export function heatColor(weight: number): Rgb {
  const w = Number.isFinite(weight) ? Math.min(1, Math.max(0, weight)) : 0;
  const gb = Math.round(255 * (1 - w));
  return [255, gb, gb];
}

export function heatCss(weight: number): string {
  const [r, g, b] = heatColor(weight);
  return `rgb(${r},${g},${b})`;
}
