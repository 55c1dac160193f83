/* tslint:disable */
/* eslint-disable */

/**
 * Witt vector, residue and base-p digits of an integer, `m/n` or `(x0,x1,...]`.
 */
export function convert(p: bigint, value: string, precision: number): string;

/**
 * All `degree`-th roots of a rational in Q_p, or the reason there are none.
 */
export function root(p: bigint, degree: bigint, value: string, precision: number): string;

/**
 * Odd primes `p ≤ limit` with `base^(p-1) ≡ 1 (mod p^2)`.
 */
export function wieferich(base: bigint, limit: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly convert: (a: bigint, b: number, c: number, d: number) => [number, number];
    readonly root: (a: bigint, b: bigint, c: number, d: number, e: number) => [number, number];
    readonly wieferich: (a: bigint, b: bigint) => [number, number];
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
