/* Copyright 2026 The vaxsim Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the vaxsim library. Every fallible call returns a
 * vaxsim_status; on failure vaxsim_last_error_message() describes the error
 * for the calling thread until its next failing call. Handles are opaque and
 * released with their matching *_free function.
 */
#ifndef VAXSIM_VAXSIM_H
#define VAXSIM_VAXSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VAXSIM_BUILDING_LIBRARY)
#    define VAXSIM_API __declspec(dllexport)
#  else
#    define VAXSIM_API __declspec(dllimport)
#  endif
#else
#  define VAXSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vaxsim_status {
    VAXSIM_OK = 0,
    VAXSIM_INVALID_ARGUMENT = 1,
    VAXSIM_IO = 2,
    VAXSIM_PARSE = 3,
    VAXSIM_UNREACHABLE = 4, /* e.g. a calibration target outside the sigma bracket */
    VAXSIM_INTERNAL = 5
} vaxsim_status;

VAXSIM_API const char* vaxsim_version(void);
VAXSIM_API const char* vaxsim_status_name(vaxsim_status status);
/* Never NULL. Empty when the calling thread has not failed yet. */
VAXSIM_API const char* vaxsim_last_error_message(void);

typedef struct vaxsim_network vaxsim_network;
typedef struct vaxsim_locations vaxsim_locations;

VAXSIM_API vaxsim_status vaxsim_network_load(const char* path, vaxsim_network** out);
VAXSIM_API vaxsim_status vaxsim_network_save(const vaxsim_network* net, const char* path);
/* Adds copies of uniformly chosen links until link_count ~ multiplier * original. */
VAXSIM_API vaxsim_status vaxsim_network_densify(const vaxsim_network* net, double multiplier, uint64_t seed,
                                                vaxsim_network** out);
VAXSIM_API void vaxsim_network_free(vaxsim_network* net);
VAXSIM_API size_t vaxsim_network_node_count(const vaxsim_network* net);
VAXSIM_API size_t vaxsim_network_link_count(const vaxsim_network* net);
/* Distinct neighbours of node over days [0, window_days). */
VAXSIM_API vaxsim_status vaxsim_network_degree(const vaxsim_network* net, uint32_t node, int32_t window_days,
                                               size_t* out);

VAXSIM_API vaxsim_status vaxsim_locations_load(const char* path, vaxsim_locations** out);
VAXSIM_API void vaxsim_locations_free(vaxsim_locations* locations);
VAXSIM_API size_t vaxsim_locations_size(const vaxsim_locations* locations);

/* sigma per hour, exposure in seconds. */
VAXSIM_API vaxsim_status vaxsim_infection_probability(double sigma, double exposure_seconds, double* out);
VAXSIM_API vaxsim_status vaxsim_visit_potential(uint32_t visits, double beta, double* out);
/* class_index in 1..6; the sixth class is capped at class6_cap visits. */
VAXSIM_API vaxsim_status vaxsim_class_potential(int class_index, double beta, int class6_cap, double* out);
/* visits_per_class has six entries, class 1 first. */
VAXSIM_API vaxsim_status vaxsim_ranking_score(const uint32_t* visits_per_class, double beta, int class6_cap,
                                              double* out);
VAXSIM_API vaxsim_status vaxsim_efficiency(double mean_size, double baseline_mean, double* out);

typedef struct vaxsim_options {
    uint64_t seed;              /* used only when has_seed != 0 */
    int has_seed;
    unsigned workers;           /* 0 is treated as 1 */
    const char* locations_path; /* NULL: locations.csv next to the network */
} vaxsim_options;

VAXSIM_API void vaxsim_options_init(vaxsim_options* options);

/* options may be NULL for defaults. */
VAXSIM_API vaxsim_status vaxsim_cmd_generate(const char* config_path, const char* out_dir,
                                             const vaxsim_options* options);
VAXSIM_API vaxsim_status vaxsim_cmd_calibrate(const char* config_path, const char* network_path,
                                              const char* out_dir, const vaxsim_options* options);
VAXSIM_API vaxsim_status vaxsim_cmd_simulate(const char* config_path, const char* network_path,
                                             const char* out_dir, const vaxsim_options* options);
VAXSIM_API vaxsim_status vaxsim_cmd_sweep(const char* config_path, const char* network_path, const char* out_dir,
                                          const vaxsim_options* options);
VAXSIM_API vaxsim_status vaxsim_cmd_threshold(const char* config_path, const char* network_path,
                                              const char* out_dir, const vaxsim_options* options);

#ifdef __cplusplus
}
#endif

#endif /* VAXSIM_VAXSIM_H */
