#pragma once

#include "eaifd/session.hpp"

#include <filesystem>
#include <functional>

namespace eaifd {

/// Exclusive advisory lock on DIR/LOCK, held for the object's lifetime.
/// Throws StateError when another process holds it.
class StateLock {
public:
    explicit StateLock(const std::filesystem::path& dir);
    ~StateLock();
    StateLock(const StateLock&) = delete;
    StateLock& operator=(const StateLock&) = delete;

private:
    int fd_ = -1;
};

struct SaveHooks {
    /// Runs after the new version is fully written and before CURRENT moves.
    std::function<void()> before_swap;
};

/// True when DIR holds a committed state (a CURRENT pointer).
bool state_exists(const std::filesystem::path& dir);

/// Writes a new version directory, then atomically repoints DIR/CURRENT to it
/// and removes the previous version.
void save_session(const std::filesystem::path& dir, const Session& session, const SaveHooks& hooks = {});

/// Throws StateError on missing, corrupt or inconsistent state.
Session load_session(const std::filesystem::path& dir);

/// Name of the version directory CURRENT points to.
std::filesystem::path current_version(const std::filesystem::path& dir);

} // namespace eaifd
