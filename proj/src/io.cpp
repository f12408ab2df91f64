#include "crowdlag/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crowdlag {

std::string format_sig(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

double parse_num(const std::string& s, const char* context) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("bad number '") + s + "' in " + context);
    }
    if (pos != s.size()) {
        throw std::runtime_error(std::string("bad number '") + s + "' in " + context);
    }
    return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return out;
}

void check_write(const std::ostream& out, const std::filesystem::path& path) {
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void write_snapshot(const std::vector<SnapshotRecord>& records, std::ostream& out) {
    std::vector<SnapshotRecord> sorted = records;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.cell_id < b.cell_id;
    });
    out << "time,epoch,cell_id,cx,cy,area,n_peds,density\n";
    for (const auto& r : sorted) {
        require(r.density >= 0.0 && std::isfinite(r.density), "snapshot density must be >= 0");
        out << format_sig(r.time) << ',' << r.epoch << ',' << r.cell_id << ','
            << format_sig(r.cx) << ',' << format_sig(r.cy) << ',' << format_sig(r.area) << ','
            << format_sig(r.n_peds) << ',' << format_sig(r.density) << '\n';
    }
}

void write_trajectories(const std::vector<TrajectoryRecord>& records, std::ostream& out) {
    std::vector<TrajectoryRecord> sorted = records;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.cell_id < b.cell_id;
    });
    out << "time,epoch,cell_id,cx,cy,n_peds\n";
    for (const auto& r : sorted) {
        require(r.n_peds >= 1.0, "trajectory rows require n_peds >= 1");
        out << format_sig(r.time) << ',' << r.epoch << ',' << r.cell_id << ','
            << format_sig(r.cx) << ',' << format_sig(r.cy) << ',' << format_sig(r.n_peds)
            << '\n';
    }
}

void write_mesh_csv(const Mesh& mesh, std::ostream& out) {
    out << "cell_id,x1,y1,x2,y2,x3,y3\n";
    for (int ci = 0; ci < mesh.cell_count(); ++ci) {
        const Triangle t = mesh.cell_triangle(ci);
        out << ci << ',' << format_sig(t.v1.x) << ',' << format_sig(t.v1.y) << ','
            << format_sig(t.v2.x) << ',' << format_sig(t.v2.y) << ',' << format_sig(t.v3.x)
            << ',' << format_sig(t.v3.y) << '\n';
    }
}

std::vector<SnapshotRecord> read_snapshot(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "time,epoch,cell_id,cx,cy,area,n_peds,density") {
        throw std::runtime_error("snapshot file has an unexpected header");
    }
    std::vector<SnapshotRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) throw std::runtime_error("snapshot row has wrong field count");
        SnapshotRecord r;
        r.time = parse_num(f[0], "snapshot");
        r.epoch = static_cast<int>(parse_num(f[1], "snapshot"));
        r.cell_id = static_cast<int>(parse_num(f[2], "snapshot"));
        r.cx = parse_num(f[3], "snapshot");
        r.cy = parse_num(f[4], "snapshot");
        r.area = parse_num(f[5], "snapshot");
        r.n_peds = parse_num(f[6], "snapshot");
        r.density = parse_num(f[7], "snapshot");
        out.push_back(r);
    }
    return out;
}

std::vector<TrajectoryRecord> read_trajectories(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "time,epoch,cell_id,cx,cy,n_peds") {
        throw std::runtime_error("trajectory file has an unexpected header");
    }
    std::vector<TrajectoryRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 6) throw std::runtime_error("trajectory row has wrong field count");
        TrajectoryRecord r;
        r.time = parse_num(f[0], "trajectories");
        r.epoch = static_cast<int>(parse_num(f[1], "trajectories"));
        r.cell_id = static_cast<int>(parse_num(f[2], "trajectories"));
        r.cx = parse_num(f[3], "trajectories");
        r.cy = parse_num(f[4], "trajectories");
        r.n_peds = parse_num(f[5], "trajectories");
        out.push_back(r);
    }
    return out;
}

std::vector<std::pair<int, Triangle>> read_mesh_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "cell_id,x1,y1,x2,y2,x3,y3") {
        throw std::runtime_error("mesh file has an unexpected header");
    }
    std::vector<std::pair<int, Triangle>> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7) throw std::runtime_error("mesh row has wrong field count");
        Triangle t;
        const int id = static_cast<int>(parse_num(f[0], "mesh"));
        t.v1 = {parse_num(f[1], "mesh"), parse_num(f[2], "mesh")};
        t.v2 = {parse_num(f[3], "mesh"), parse_num(f[4], "mesh")};
        t.v3 = {parse_num(f[5], "mesh"), parse_num(f[6], "mesh")};
        out.emplace_back(id, t);
    }
    return out;
}

void MemorySink::snapshot(double time, const std::vector<SnapshotRecord>& records,
                          const Mesh& mesh) {
    snapshots.emplace_back(time, records);
    snapshot_meshes.push_back(mesh);
}

void MemorySink::trajectories(const std::vector<TrajectoryRecord>& records) {
    trajectory_records.insert(trajectory_records.end(), records.begin(), records.end());
}

CsvDirSink::CsvDirSink(std::string directory) : dir_(std::move(directory)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir_ + "'");
}

void CsvDirSink::snapshot(double time, const std::vector<SnapshotRecord>& records,
                          const Mesh& mesh) {
    const std::string tag = format_sig(time);
    const auto snap_path = std::filesystem::path(dir_) / ("snapshot_" + tag + ".csv");
    auto out = open_for_write(snap_path);
    write_snapshot(records, out);
    check_write(out, snap_path);

    const auto mesh_path = std::filesystem::path(dir_) / ("mesh_" + tag + ".csv");
    auto mesh_out = open_for_write(mesh_path);
    write_mesh_csv(mesh, mesh_out);
    check_write(mesh_out, mesh_path);
}

void CsvDirSink::trajectories(const std::vector<TrajectoryRecord>& records) {
    pending_.insert(pending_.end(), records.begin(), records.end());
}

void CsvDirSink::finish() {
    const auto path = std::filesystem::path(dir_) / "trajectories.csv";
    auto out = open_for_write(path);
    write_trajectories(pending_, out);
    check_write(out, path);
}

}  // namespace crowdlag
