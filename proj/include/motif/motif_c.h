/* C interface to the MOTIF hand perception pipelines.
 *
 * All functions return a motif_status; on failure motif_last_error() gives a
 * thread-local human-readable message and motif_status_name() the stable
 * identifier used in machine-readable output. Out-parameters are written
 * only on MOTIF_OK. Strings returned through char** out-parameters are
 * heap-allocated JSON documents; release them with motif_string_free().
 * Handles are released with their matching *_free(); freeing NULL is a
 * no-op.
 */
#ifndef MOTIF_C_H
#define MOTIF_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MOTIF_API __declspec(dllexport)
#else
#define MOTIF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum motif_status {
  MOTIF_OK = 0,
  MOTIF_ERR_INVALID_ARGUMENT,
  MOTIF_ERR_FILE_NOT_FOUND,
  MOTIF_ERR_IO,
  MOTIF_ERR_PARSE,
  MOTIF_ERR_CONFIG,
  MOTIF_ERR_INCOMPLETE_FRAME,
  MOTIF_ERR_CRC_MISMATCH,
  MOTIF_ERR_NON_POSITIVE_DEPTH,
  MOTIF_ERR_PIXEL_OUT_OF_BOUNDS,
  MOTIF_ERR_BEHIND_CAMERA,
  MOTIF_ERR_DIMENSION_MISMATCH,
  MOTIF_ERR_EMPTY_CLOUD,
  MOTIF_ERR_TOO_FEW_SLICES,
  MOTIF_ERR_MISSING_SCORES,
  MOTIF_ERR_INSUFFICIENT_COVERAGE,
  MOTIF_ERR_EMPTY_TRACE,
  MOTIF_ERR_UNLABELED_TRACE,
  MOTIF_ERR_DEGENERATE_CLASS,
  MOTIF_ERR_RANK_COLLAPSE,
  MOTIF_ERR_TOO_FEW_POINTS,
  MOTIF_ERR_DEGENERATE_COVARIANCE,
  MOTIF_ERR_INVALID_GEOMETRY,
  MOTIF_ERR_INTERNAL
} motif_status;

/* Stable identifier for a status, e.g. "FileNotFound". Never NULL. */
MOTIF_API const char* motif_status_name(motif_status status);

/* Message describing the most recent failure on this thread. Never NULL;
 * empty before the first failure. Overwritten by the next failing call. */
MOTIF_API const char* motif_last_error(void);

MOTIF_API void motif_string_free(char* str);
MOTIF_API void motif_buffer_free(uint8_t* buf);

/* ---- configuration ---- */

typedef struct motif_config motif_config_t;

MOTIF_API motif_status motif_config_default(motif_config_t** out);
MOTIF_API motif_status motif_config_load(const char* path, motif_config_t** out);
MOTIF_API void motif_config_free(motif_config_t* config);

/* ---- sensor frames and the wire codec ---- */

typedef struct motif_frame {
  uint8_t unit_id; /* 0..11 */
  uint8_t has_tactile;
  uint32_t timestamp_us;
  float acc[3];  /* m/s^2 */
  float gyro[3]; /* rad/s */
  float mag[3];  /* microtesla */
  uint16_t tactile[36]; /* grams; valid when has_tactile */
} motif_frame_t;

typedef struct motif_frames motif_frames_t;

MOTIF_API motif_status motif_frames_create(motif_frames_t** out);
MOTIF_API motif_status motif_frames_push(motif_frames_t* frames,
                                         const motif_frame_t* frame);
MOTIF_API motif_status motif_frames_count(const motif_frames_t* frames,
                                          size_t* out);
MOTIF_API motif_status motif_frames_get(const motif_frames_t* frames,
                                        size_t index, motif_frame_t* out);
MOTIF_API void motif_frames_free(motif_frames_t* frames);

/* Decodes a byte stream, skipping corrupted messages. dropped (optional)
 * counts the skipped sync candidates. */
MOTIF_API motif_status motif_decode(const uint8_t* data, size_t size,
                                    motif_frames_t** out, size_t* dropped);

/* Encodes every frame back to wire bytes (malloc'd, motif_buffer_free). */
MOTIF_API motif_status motif_encode(const motif_frames_t* frames,
                                    uint8_t** out, size_t* size);

MOTIF_API motif_status motif_frames_save_csv(const motif_frames_t* frames,
                                             const char* path);

/* ---- point clouds, cameras, rasters ---- */

typedef struct motif_cloud motif_cloud_t;
typedef struct motif_camera motif_camera_t;
typedef struct motif_thermal motif_thermal_t;
typedef struct motif_depth motif_depth_t;

MOTIF_API motif_status motif_cloud_load_ply(const char* path,
                                            motif_cloud_t** out);
MOTIF_API motif_status motif_cloud_save_ply(const motif_cloud_t* cloud,
                                            const char* path);
MOTIF_API motif_status motif_cloud_count(const motif_cloud_t* cloud,
                                         size_t* out);
MOTIF_API void motif_cloud_free(motif_cloud_t* cloud);

MOTIF_API motif_status motif_camera_load(const char* path,
                                         motif_camera_t** out);
MOTIF_API void motif_camera_free(motif_camera_t* camera);

MOTIF_API motif_status motif_thermal_load(const char* path,
                                          motif_thermal_t** out);
MOTIF_API void motif_thermal_free(motif_thermal_t* thermal);

MOTIF_API motif_status motif_depth_load(const char* path, motif_depth_t** out);
MOTIF_API void motif_depth_free(motif_depth_t* depth);

/* ---- thermal affordance pipeline ---- */

/* Projects each point into the thermal image and attaches the reading where
 * the depth image confirms visibility. Mutates the cloud. stats_json
 * (optional): {"painted", "occluded", "out_of_view", "total"}. */
MOTIF_API motif_status motif_paint(motif_cloud_t* cloud,
                                   const motif_camera_t* camera,
                                   const motif_thermal_t* thermal,
                                   const motif_depth_t* depth,
                                   const motif_config_t* config,
                                   char** stats_json);

/* Scores, slices, finds the hot/cool boundary and replaces color anomalies.
 * report_json (optional): boundary, anomaly count, dominant colors. */
MOTIF_API motif_status motif_denoise(const motif_cloud_t* cloud,
                                     const motif_config_t* config,
                                     motif_cloud_t** cleaned,
                                     char** report_json);

typedef struct motif_grasps motif_grasps_t;

MOTIF_API motif_status motif_grasps_load(const char* path,
                                         motif_grasps_t** out);
MOTIF_API motif_status motif_grasps_save(const motif_grasps_t* grasps,
                                         const char* path);
MOTIF_API motif_status motif_grasps_count(const motif_grasps_t* grasps,
                                          size_t* out);
MOTIF_API void motif_grasps_free(motif_grasps_t* grasps);

/* Keeps candidates whose contacts all clear the hot region by more than the
 * safety radius. Pass a negative radius to use the configured one.
 * report_json (optional): kept indices plus one offending (contact, hot
 * point, distance) triple per rejection. */
MOTIF_API motif_status motif_filter_grasps(const motif_cloud_t* cloud,
                                           const motif_grasps_t* grasps,
                                           const motif_config_t* config,
                                           double safety_radius,
                                           motif_grasps_t** kept,
                                           char** report_json);

/* ---- flick traces and mass classification ---- */

typedef struct motif_traces motif_traces_t;
typedef struct motif_features motif_features_t;
typedef struct motif_lda motif_lda_t;

/* Reads every <name>.csv with its <name>.json sidecar, sorted by name. */
MOTIF_API motif_status motif_traces_load_dir(const char* dir,
                                             motif_traces_t** out);
/* Writes trace_000.csv/.json, trace_001.csv/.json, ... into dir. */
MOTIF_API motif_status motif_traces_save_dir(const motif_traces_t* traces,
                                             const char* dir);
MOTIF_API motif_status motif_traces_count(const motif_traces_t* traces,
                                          size_t* out);
MOTIF_API void motif_traces_free(motif_traces_t* traces);

/* Windows each trace onto the tick grid and computes the 42 window
 * statistics. stats_json (optional): {"traces", "filled_samples"}. */
MOTIF_API motif_status motif_features_extract(const motif_traces_t* traces,
                                              const motif_config_t* config,
                                              motif_features_t** out,
                                              char** stats_json);
MOTIF_API motif_status motif_features_save_csv(const motif_features_t* features,
                                               const char* path);
MOTIF_API motif_status motif_features_load_csv(const char* path,
                                               motif_features_t** out);
MOTIF_API motif_status motif_features_count(const motif_features_t* features,
                                            size_t* out);
MOTIF_API void motif_features_free(motif_features_t* features);

MOTIF_API motif_status motif_lda_fit(const motif_features_t* features,
                                     const motif_config_t* config,
                                     motif_lda_t** out);
MOTIF_API motif_status motif_lda_save(const motif_lda_t* model,
                                      const char* path);
MOTIF_API motif_status motif_lda_load(const char* path, motif_lda_t** out);
MOTIF_API void motif_lda_free(motif_lda_t* model);

/* Classifies every row; results_json: [{"label", "true_label"?,
 * "distances": {...}}]. */
MOTIF_API motif_status motif_lda_classify(const motif_lda_t* model,
                                          const motif_features_t* features,
                                          char** results_json);

/* Model card: class labels, explained variance, eigenvalues and the
 * per-direction feature weights sorted by magnitude. */
MOTIF_API motif_status motif_lda_describe(const motif_lda_t* model,
                                          char** card_json);

/* Fits, runs leave-one-out, and summarizes: accuracy, confusion matrix,
 * explained variance and a confidence ellipse per class over the first two
 * discriminant coordinates (ellipses omitted with fewer than 2 retained
 * directions). */
MOTIF_API motif_status motif_lda_report(const motif_features_t* features,
                                        const motif_config_t* config,
                                        double ellipse_coverage,
                                        char** report_json);

/* ---- synthetic data ---- */

/* Hot-banded cylinder cloud with seeded color anomalies. Pass a negative
 * anomaly_count to use the configured one. truth_json (optional):
 * {"anomaly_indices", "boundary_z"}. */
MOTIF_API motif_status motif_synth_cylinder(const motif_config_t* config,
                                            uint64_t seed,
                                            int64_t anomaly_count,
                                            motif_cloud_t** out,
                                            char** truth_json);

/* Labeled flick traces for the three reference masses, trials_per_class
 * each, deterministic per seed. */
MOTIF_API motif_status motif_synth_flicks(const motif_config_t* config,
                                          uint64_t seed,
                                          motif_traces_t** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MOTIF_C_H */
