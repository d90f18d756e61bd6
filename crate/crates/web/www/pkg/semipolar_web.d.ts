/* tslint:disable */
/* eslint-disable */

/**
 * The symplectic affine polar space over `GF(p)` with `n = 2m`.
 */
export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * The two bisectors and the sphere of the pair `(i, j)`.
     */
    bisectors(i: number, j: number): string;
    /**
     * Points adjacent to point `i`, with the affine dimension of that set.
     */
    joinable(i: number): string;
    layout(): string;
    constructor(p: number, m: number);
    /**
     * Singular lines through point `i`, one entry per direction.
     */
    singular_lines(i: number): string;
    size(): number;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_bisectors: (a: number, b: number, c: number) => [number, number, number, number];
    readonly demo_joinable: (a: number, b: number) => [number, number, number, number];
    readonly demo_layout: (a: number) => [number, number];
    readonly demo_new: (a: number, b: number) => [number, number, number];
    readonly demo_singular_lines: (a: number, b: number) => [number, number, number, number];
    readonly demo_size: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
