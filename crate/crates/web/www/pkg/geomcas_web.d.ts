/* tslint:disable */
/* eslint-disable */

/**
 * Full analysis of a geometry file (chart metric or Lie algebra).
 */
export function analyze(text: string, kmax: number): string;

/**
 * Bundled geometry file of a case, or the empty string.
 */
export function builtin_source(name: string): string;

/**
 * Newline-separated `name<TAB>description` list of the bundled cases.
 */
export function builtins(): string;

/**
 * Homogeneous-space report of a bundled case, with optional `name=value` overrides.
 */
export function homogeneous(name: string, overrides: string): string;

/**
 * Report of the generated two-symmetric family. `h` is one expression per
 * line; `f` has one row per line with entries separated by whitespace.
 */
export function two_symmetric(h: string, f: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze: (a: number, b: number, c: number) => [number, number, number, number];
    readonly builtin_source: (a: number, b: number) => [number, number];
    readonly builtins: () => [number, number];
    readonly homogeneous: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly two_symmetric: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
