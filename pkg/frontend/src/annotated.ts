/**
 * Helpers over the annotation payload: split the annotated text into plain
 * and gloss segments, and recover the original document byte-for-byte.
 *
 * Insertion offsets address the ORIGINAL text. Removing insertions left to
 * right keeps every remaining insertion at its recorded offset, because the
 * text before it has already been restored.
 */

import type { AnnotatedText } from "./api.js";

export interface PlainSegment {
  kind: "plain";
  text: string;
}

export interface GlossSegment {
  kind: "gloss";
  text: string;
  lemma: string;
}

export type Segment = PlainSegment | GlossSegment;

/** Inverse of the annotation: original document text. */
export function stripInsertions(annotated: AnnotatedText): string {
  let out = annotated.text;
  for (const { offset, inserted } of annotated.insertions) {
    if (out.slice(offset, offset + inserted.length) !== inserted) {
      throw new Error(`insertion mismatch at offset ${offset}`);
    }
    out = out.slice(0, offset) + out.slice(offset + inserted.length);
  }
  return out;
}

/** Alternating plain/gloss segments; concatenating all segment texts
 * reproduces the annotated text, and the plain segments alone reproduce
 * the original. */
export function toSegments(annotated: AnnotatedText): Segment[] {
  const original = stripInsertions(annotated);
  const segments: Segment[] = [];
  let cursor = 0;
  for (const { offset, inserted, lemma } of annotated.insertions) {
    if (offset > cursor) {
      segments.push({ kind: "plain", text: original.slice(cursor, offset) });
    }
    segments.push({ kind: "gloss", text: inserted, lemma });
    cursor = offset;
  }
  segments.push({ kind: "plain", text: original.slice(cursor) });
  return segments;
}
