/* tslint:disable */
/* eslint-disable */

/**
 * Classification, `λ₀`, Cheeger constant and quotient bounds of a metric
 * Lie algebra given by catalog name or fixture text.
 */
export function analyze_algebra(input: string): string;

/**
 * `λ₀` of the tail `(c, b)` for `points` cutoffs across an interval base.
 */
export function tail_curve(fixture: string, grid: number, points: number): string;

/**
 * Warp, ground state of `S` and the mode spectrum of a warped fixture.
 */
export function warped_profile(fixture: string, grid: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_algebra: (a: number, b: number) => [number, number];
    readonly tail_curve: (a: number, b: number, c: number, d: number) => [number, number];
    readonly warped_profile: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
