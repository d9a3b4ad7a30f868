/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_medium_control: (a: number) => number;
export const __wbg_get_medium_delta_control: (a: number) => number;
export const __wbg_get_medium_delta_microwave: (a: number) => number;
export const __wbg_get_medium_delta_probe: (a: number) => number;
export const __wbg_get_medium_microwave: (a: number) => number;
export const __wbg_get_medium_pump_rate: (a: number) => number;
export const __wbg_medium_free: (a: number, b: number) => void;
export const __wbg_propagation_free: (a: number, b: number) => void;
export const __wbg_set_medium_control: (a: number, b: number) => void;
export const __wbg_set_medium_delta_control: (a: number, b: number) => void;
export const __wbg_set_medium_delta_microwave: (a: number, b: number) => void;
export const __wbg_set_medium_delta_probe: (a: number, b: number) => void;
export const __wbg_set_medium_microwave: (a: number, b: number) => void;
export const __wbg_set_medium_pump_rate: (a: number, b: number) => void;
export const chiCut: (a: number, b: number, c: number) => [number, number, number, number];
export const medium_new: (a: number, b: number, c: number, d: number) => number;
export const propagateCut: (a: number, b: number, c: number, d: number) => [number, number, number];
export const propagation_transmission: (a: number) => number;
export const propagation_values: (a: number) => [number, number];
export const spectrum: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
