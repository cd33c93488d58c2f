#pragma once

#include "obdr/config.hpp"

#include <ostream>
#include <string>

namespace obdr
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

/// Overrides the directory used when no output path is given.
inline constexpr const char* kOutputDirEnv = "OBDR_OUTPUT_DIR";

/// `<dir>/<command>.<ext>`, dir from kOutputDirEnv or the working directory.
std::string default_output_path(Command command);

int cmd_simulate(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_model(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_compare(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_snapshot(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// Dispatches on manifest.command and maps errors to exit codes.
int run_command(const RunManifest& manifest, std::ostream& out, std::ostream& err);

} // namespace obdr
