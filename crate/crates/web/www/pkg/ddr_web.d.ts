/* tslint:disable */
/* eslint-disable */

/**
 * Medium and drive shared by every operation.
 */
export class Medium {
    free(): void;
    [Symbol.dispose](): void;
    constructor(pump_rate: number, microwave: number, control: number, delta_probe: number);
    control: number;
    delta_control: number;
    delta_microwave: number;
    delta_probe: number;
    microwave: number;
    pump_rate: number;
}

/**
 * Result of a 1D propagation through the doublet.
 */
export class Propagation {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly transmission: number;
    /**
     * Quadruples (x, input probe intensity, output probe intensity, output
     * control intensity), intensities as |field|^2 in units of gamma^2.
     */
    readonly values: Float64Array;
}

export function chiCut(medium: Medium, separation: number, points: number): Float64Array;

export function propagateCut(medium: Medium, separation: number, length: number, points: number): Propagation;

export function spectrum(medium: Medium, start: number, stop: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_medium_control: (a: number) => number;
    readonly __wbg_get_medium_delta_control: (a: number) => number;
    readonly __wbg_get_medium_delta_microwave: (a: number) => number;
    readonly __wbg_get_medium_delta_probe: (a: number) => number;
    readonly __wbg_get_medium_microwave: (a: number) => number;
    readonly __wbg_get_medium_pump_rate: (a: number) => number;
    readonly __wbg_medium_free: (a: number, b: number) => void;
    readonly __wbg_propagation_free: (a: number, b: number) => void;
    readonly __wbg_set_medium_control: (a: number, b: number) => void;
    readonly __wbg_set_medium_delta_control: (a: number, b: number) => void;
    readonly __wbg_set_medium_delta_microwave: (a: number, b: number) => void;
    readonly __wbg_set_medium_delta_probe: (a: number, b: number) => void;
    readonly __wbg_set_medium_microwave: (a: number, b: number) => void;
    readonly __wbg_set_medium_pump_rate: (a: number, b: number) => void;
    readonly chiCut: (a: number, b: number, c: number) => [number, number, number, number];
    readonly medium_new: (a: number, b: number, c: number, d: number) => number;
    readonly propagateCut: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly propagation_transmission: (a: number) => number;
    readonly propagation_values: (a: number) => [number, number];
    readonly spectrum: (a: number, b: number, c: number, d: number) => [number, number, number, number];
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
