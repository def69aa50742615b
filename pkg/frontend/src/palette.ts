/** Deterministic citation-id colors; a port of the backend palette so panels
 * can color nodes without a round trip. Must stay bit-identical to the server
 * (pinned by a cross-language fixture test). */

const GOLDEN = 0.6180339887498949;

function hsvToRgb(h: number, s: number, v: number): [number, number, number] {
  if (s === 0) return [v, v, v];
  const i = Math.floor(h * 6.0);
  const f = h * 6.0 - i;
  const p = v * (1.0 - s);
  const q = v * (1.0 - s * f);
  const t = v * (1.0 - s * (1.0 - f));
  switch (((i % 6) + 6) % 6) {
    case 0:
      return [v, t, p];
    case 1:
      return [q, v, p];
    case 2:
      return [p, v, t];
    case 3:
      return [p, q, v];
    case 4:
      return [t, p, v];
    default:
      return [v, p, q];
  }
}

/** Round half to even, matching Python's round() used on the server. */
function roundHalfEven(x: number): number {
  const floor = Math.floor(x);
  const diff = x - floor;
  if (diff > 0.5) return floor + 1;
  if (diff < 0.5) return floor;
  return floor % 2 === 0 ? floor : floor + 1;
}

function hex2(value: number): string {
  return value.toString(16).padStart(2, "0");
}

export function colorForId(citationId: number): string {
  const hue = (citationId * GOLDEN) % 1.0;
  const sat = 0.55 + 0.15 * ((citationId * 7) % 3);
  const val = 0.95 - 0.2 * ((citationId * 5) % 2);
  const [r, g, b] = hsvToRgb(hue, Math.min(sat, 1.0), val);
  return `#${hex2(roundHalfEven(r * 255))}${hex2(roundHalfEven(g * 255))}${hex2(roundHalfEven(b * 255))}`;
}

export function paletteFor(ids: Iterable<number>): Map<number, string> {
  const palette = new Map<number, string>();
  for (const id of ids) palette.set(id, colorForId(id));
  return palette;
}
