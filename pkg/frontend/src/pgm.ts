/** Binary PGM (P5) parsing for server-rendered saliency maps. */

import { heatColor, Rgb } from "./heat.js";

export interface PgmImage {
  width: number;
  height: number;
  maxval: number;
  /** Row-major pixel values, length width * height. */
  pixels: Uint8Array;
}

/** Decode a base64 string into bytes in both browser and node runtimes. */
export function decodeBase64(data: string): Uint8Array {
  if (typeof atob === "function") {
    const raw = atob(data);
    const bytes = new Uint8Array(raw.length);
    for (let i = 0; i < raw.length; i++) bytes[i] = raw.charCodeAt(i);
    return bytes;
  }
  type NodeBufferCtor = { from(data: string, enc: string): Uint8Array };
  const buffer = (globalThis as { Buffer?: NodeBufferCtor }).Buffer;
  if (!buffer) throw new Error("no base64 decoder available");
  return Uint8Array.from(buffer.from(data, "base64"));
}

function isWhitespace(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a || byte === 0x0d;
}

/** Parse a binary PGM; supports `#` comments in the header. */
export function parsePgm(bytes: Uint8Array): PgmImage {
  if (bytes.length < 2 || bytes[0] !== 0x50 || bytes[1] !== 0x35) {
    throw new Error("not a binary PGM (missing P5 magic)");
  }
  let pos = 2;
  const nextToken = (): number => {
    for (;;) {
      while (pos < bytes.length && isWhitespace(bytes[pos])) pos++;
      if (bytes[pos] === 0x23) {
        while (pos < bytes.length && bytes[pos] !== 0x0a) pos++;
        continue;
      }
      break;
    }
    let value = 0;
    let digits = 0;
    while (pos < bytes.length && bytes[pos] >= 0x30 && bytes[pos] <= 0x39) {
      value = value * 10 + (bytes[pos] - 0x30);
      pos++;
      digits++;
    }
    if (digits === 0) throw new Error("malformed PGM header");
    return value;
  };
  const width = nextToken();
  const height = nextToken();
  const maxval = nextToken();
  pos++; // single whitespace byte separates header from raster
  const expected = width * height;
  if (bytes.length - pos < expected) throw new Error("truncated PGM raster");
  return { width, height, maxval, pixels: bytes.slice(pos, pos + expected) };
}

/** Convert a saliency PGM into per-pixel heat colors for overlay rendering. */
export function saliencyColors(image: PgmImage): Rgb[] {
  const out: Rgb[] = new Array(image.pixels.length);
  for (let i = 0; i < image.pixels.length; i++) {
    out[i] = heatColor(image.pixels[i] / image.maxval);
  }
  return out;
}
