import { readFileSync } from "node:fs";

import type { FetchLike } from "../src/api.js";

/** Frozen engine payloads shared with the backend test suite. */
export function golden(name: string): any {
  const url = new URL(`../../fixtures/golden/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8"));
}

export function fixture(name: string): any {
  const url = new URL(`../../fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8"));
}

/** Key-sorted JSON so structural equality can be checked byte-wise. */
export function stableStringify(value: unknown): string {
  if (Array.isArray(value)) {
    return `[${value.map(stableStringify).join(",")}]`;
  }
  if (value !== null && typeof value === "object") {
    const entries = Object.keys(value as Record<string, unknown>)
      .sort()
      .map(
        (key) =>
          `${JSON.stringify(key)}:${stableStringify(
            (value as Record<string, unknown>)[key],
          )}`,
      );
    return `{${entries.join(",")}}`;
  }
  return JSON.stringify(value);
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export type RouteResult =
  | unknown
  | { status: number; body: unknown }
  | ((body: unknown, call: number) => unknown | { status: number; body: unknown });

/** Scripted fetch: routes map "METHOD /path" to one response, an array of
 * responses consumed in order, or a handler. */
export function mockFetch(
  routes: Record<string, RouteResult | RouteResult[]>,
): { fetch: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const counters = new Map<string, number>();

  const fetchFn: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body =
      typeof init?.body === "string" ? JSON.parse(init.body) : undefined;
    calls.push({ method, path, body });

    const key = `${method} ${path}`;
    let route = routes[key];
    if (route === undefined) {
      return new Response(
        JSON.stringify({ code: "Unrouted", message: key }),
        { status: 500, headers: { "content-type": "application/json" } },
      );
    }
    const call = counters.get(key) ?? 0;
    counters.set(key, call + 1);
    if (Array.isArray(route)) {
      route = route[Math.min(call, route.length - 1)];
    }
    let outcome =
      typeof route === "function"
        ? (route as (body: unknown, call: number) => unknown)(body, call)
        : route;
    let status = 200;
    if (
      outcome !== null &&
      typeof outcome === "object" &&
      "status" in (outcome as object) &&
      "body" in (outcome as object)
    ) {
      status = (outcome as { status: number }).status;
      outcome = (outcome as { body: unknown }).body;
    }
    return new Response(JSON.stringify(outcome), {
      status,
      headers: { "content-type": "application/json" },
    });
  };

  return { fetch: fetchFn, calls };
}
