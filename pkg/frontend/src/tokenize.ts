/**
 * Client-side mirror of the service tokenizer: lowercase alphanumeric runs,
 * 0-based positions. The UI needs it only to locate each token occurrence
 * inside the raw text so highlights land on the right characters; scores
 * always come from the service.
 */

export interface TokenSpan {
  token: string;
  position: number;
  start: number;
  end: number; // exclusive
}

const TOKEN_RUN = /[0-9a-z]+/g;

export function tokenSpans(text: string): TokenSpan[] {
  const spans: TokenSpan[] = [];
  const lowered = text.toLowerCase();
  let match: RegExpExecArray | null;
  TOKEN_RUN.lastIndex = 0;
  while ((match = TOKEN_RUN.exec(lowered)) !== null) {
    spans.push({
      token: match[0],
      position: spans.length,
      start: match.index,
      end: match.index + match[0].length,
    });
  }
  return spans;
}

export function unitId(span: TokenSpan): string {
  return `${span.token}@${span.position}`;
}
