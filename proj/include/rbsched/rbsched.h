/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rbsched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of the rbsched random-beamforming scheduler simulator.
 *
 * Every function returns an rbs_status. On failure a message describing the
 * error is available from rbs_last_error() on the same thread until the next
 * call into the library.
 */

#ifndef RBSCHED_RBSCHED_H_
#define RBSCHED_RBSCHED_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RBSCHED_BUILDING_LIBRARY)
#    define RBS_API __declspec(dllexport)
#  else
#    define RBS_API __declspec(dllimport)
#  endif
#else
#  define RBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rbs_status {
  RBS_OK = 0,
  RBS_ERR_INVALID_ARGUMENT = 1,
  RBS_ERR_CONFIG = 2,
  RBS_ERR_CALIBRATION = 3,
  RBS_ERR_UNSUPPORTED = 4,
  RBS_ERR_IO = 5,
  RBS_ERR_DOMAIN = 6,
  RBS_ERR_INTERNAL = 7
} rbs_status;

typedef struct rbs_config rbs_config;
typedef struct rbs_beta rbs_beta;

typedef struct rbs_dims {
  int M;
  int Q;
  int Nt;
  int Nr;
  int K;
} rbs_dims;

typedef struct rbs_run_options {
  int workers;                /* <= 0 means 1 */
  const char* beta_cache_dir; /* NULL: no cache */
  const char* log_path;       /* NULL: no round log */
} rbs_run_options;

/* Library version, e.g. "0.1.0+abc1234". Never NULL. */
RBS_API const char* rbs_version(void);
/* Message of the last failed call on this thread; "" if none. */
RBS_API const char* rbs_last_error(void);
/* Offending config key of the last RBS_ERR_CONFIG on this thread; "" if none. */
RBS_API const char* rbs_last_error_field(void);

RBS_API rbs_status rbs_config_load(const char* path, rbs_config** out);
RBS_API rbs_status rbs_config_parse(const char* json_text, rbs_config** out);
RBS_API void rbs_config_free(rbs_config* cfg);

RBS_API rbs_status rbs_config_set_seed(rbs_config* cfg, uint64_t seed);
/* Trials per sweep point. */
RBS_API rbs_status rbs_config_set_trials(rbs_config* cfg, uint64_t trials);
/* Calibration samples per user CDF. */
RBS_API rbs_status rbs_config_set_samples(rbs_config* cfg, uint64_t samples);
RBS_API rbs_status rbs_config_get_dims(const rbs_config* cfg, rbs_dims* out);
RBS_API rbs_status rbs_config_get_seed(const rbs_config* cfg, uint64_t* out);
/* Stable 16-hex-digit hash of the canonical config; buf needs 17 bytes. */
RBS_API rbs_status rbs_config_hash(const rbs_config* cfg, char* buf, size_t len);

/* beta over the config's calibrate grid; CSV K,rho_dB,beta,... */
RBS_API rbs_status rbs_calibrate(const rbs_config* cfg, const rbs_run_options* opts,
                                 const char* out_csv);
/* Runs the sweep; writes the results CSV and <out_csv>.meta.json. */
RBS_API rbs_status rbs_simulate(const rbs_config* cfg, const rbs_run_options* opts,
                                const char* out_csv);
/* Runs the invariant suites. inject_fault != 0 swaps the bound CDFs. The
 * report is written to out_json when non-NULL. */
RBS_API rbs_status rbs_verify(uint64_t seed, const rbs_run_options* opts, int inject_fault,
                              const char* out_json, int* all_passed);
/* fig1.csv .. fig4.csv into out_dir (created if missing). */
RBS_API rbs_status rbs_sweep_figs(uint64_t seed, uint64_t trials, const rbs_run_options* opts,
                                  const char* out_dir);

/* beta table of the config's base point. */
RBS_API rbs_status rbs_beta_calibrate(const rbs_config* cfg, const rbs_run_options* opts,
                                      rbs_beta** out);
RBS_API rbs_status rbs_beta_load(const rbs_config* cfg, const char* path, rbs_beta** out);
RBS_API rbs_status rbs_beta_save(const rbs_beta* beta, const char* path);
RBS_API rbs_status rbs_beta_get(const rbs_beta* beta, int n, int k, int r, double* out);
RBS_API void rbs_beta_free(rbs_beta* beta);

typedef struct rbs_round_summary {
  double sum_rate;
  int feedback_bits;  /* network total */
  int feedback_messages;
  int served_beams;
} rbs_round_summary;

/* One scheduling round of the base point for a given trial index. */
RBS_API rbs_status rbs_round_run(const rbs_config* cfg, const rbs_beta* beta, uint64_t trial,
                                 rbs_round_summary* out);

/* Debug dump of the SINR table and its bounds for one trial of the base
 * point; CSV n,k,i,r,l,sinr,S,T. */
RBS_API rbs_status rbs_sinr_dump(const rbs_config* cfg, uint64_t trial, const char* out_csv);

/* kind 0: lower-bound CDF, 1: upper-bound CDF, for super-cell n. */
RBS_API rbs_status rbs_cdf_eval(const rbs_config* cfg, int kind, int n, double x, double* out);
RBS_API rbs_status rbs_order_stat_cdf(double u, int K, int j, double* out);

#ifdef __cplusplus
}
#endif

#endif /* RBSCHED_RBSCHED_H_ */
