#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "crowdlag/mesh.hpp"

namespace crowdlag {

struct SnapshotRecord {
    double time = 0.0;
    int epoch = 0;
    int cell_id = 0;
    double cx = 0.0;
    double cy = 0.0;
    double area = 0.0;
    double n_peds = 0.0;
    double density = 0.0;
};

struct TrajectoryRecord {
    double time = 0.0;
    int epoch = 0;
    int cell_id = 0;
    double cx = 0.0;
    double cy = 0.0;
    double n_peds = 0.0;  // >= 1 by construction
};

// Receives records from a simulation run. One writer at a time.
class RecordSink {
  public:
    virtual ~RecordSink() = default;
    virtual void snapshot(double time, const std::vector<SnapshotRecord>& records,
                          const Mesh& mesh) = 0;
    virtual void trajectories(const std::vector<TrajectoryRecord>& records) = 0;
    virtual void finish() {}
};

class MemorySink : public RecordSink {
  public:
    void snapshot(double time, const std::vector<SnapshotRecord>& records,
                  const Mesh& mesh) override;
    void trajectories(const std::vector<TrajectoryRecord>& records) override;

    std::vector<std::pair<double, std::vector<SnapshotRecord>>> snapshots;
    std::vector<Mesh> snapshot_meshes;
    std::vector<TrajectoryRecord> trajectory_records;
};

// Writes snapshot_<t>.csv plus mesh_<t>.csv per snapshot and, on finish(),
// trajectories.csv. Files are deterministic: fixed column order, rows sorted
// by (time, cell_id), numbers at 9 significant digits.
class CsvDirSink : public RecordSink {
  public:
    explicit CsvDirSink(std::string directory);
    void snapshot(double time, const std::vector<SnapshotRecord>& records,
                  const Mesh& mesh) override;
    void trajectories(const std::vector<TrajectoryRecord>& records) override;
    void finish() override;

  private:
    std::string dir_;
    std::vector<TrajectoryRecord> pending_;
};

std::string format_sig(double v);  // 9 significant digits

void write_snapshot(const std::vector<SnapshotRecord>& records, std::ostream& out);
void write_trajectories(const std::vector<TrajectoryRecord>& records, std::ostream& out);
void write_mesh_csv(const Mesh& mesh, std::ostream& out);

std::vector<SnapshotRecord> read_snapshot(std::istream& in);
std::vector<TrajectoryRecord> read_trajectories(std::istream& in);
std::vector<std::pair<int, Triangle>> read_mesh_csv(std::istream& in);

}  // namespace crowdlag
