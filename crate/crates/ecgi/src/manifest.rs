//! CSV manifest of image pairs.
//!
//! Expected header:
//!
//! ```text
//! pair_id,path_a,path_b,roi_a_x,roi_a_y,roi_a_w,roi_a_h,roi_b_x,roi_b_y,roi_b_w,roi_b_h
//! ```
//!
//! ROI columns for a side are either all empty (score the full image) or
//! all present. When both sides carry an ROI the two rectangles must have
//! equal dimensions so the pairing stays like for like. Relative image
//! paths are resolved against the manifest's directory.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::imaging::RoiRect;

/// One manifest row, paths already resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRow {
    pub pair_id: String,
    pub path_a: PathBuf,
    pub path_b: PathBuf,
    pub roi_a: Option<RoiRect>,
    pub roi_b: Option<RoiRect>,
}

const HEADER: [&str; 11] = [
    "pair_id", "path_a", "path_b", "roi_a_x", "roi_a_y", "roi_a_w", "roi_a_h", "roi_b_x",
    "roi_b_y", "roi_b_w", "roi_b_h",
];

/// Reads and validates a pair manifest.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>> {
    let row_error = |line: u64, reason: String| Error::ManifestRow {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::UnreadableFile {
                path: path.to_path_buf(),
                source: std::io::Error::other(e.to_string()),
            },
            _ => row_error(1, e.to_string()),
        })?;

    let headers = reader.headers().map_err(|e| row_error(1, e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(row_error(
            1,
            format!(
                "header must be exactly `{}`, got `{}`",
                HEADER.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }

    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let resolve = |p: &str| {
        let candidate = Path::new(p);
        if candidate.is_absolute() {
            candidate.to_path_buf()
        } else {
            base.join(candidate)
        }
    };

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line())
                .unwrap_or(0);
            row_error(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != HEADER.len() {
            return Err(row_error(
                line,
                format!("expected {} fields, got {}", HEADER.len(), record.len()),
            ));
        }
        let pair_id = record[0].to_string();
        if pair_id.is_empty() {
            return Err(row_error(line, "empty pair_id".into()));
        }
        if record[1].is_empty() || record[2].is_empty() {
            return Err(row_error(line, "empty image path".into()));
        }
        let roi_a = parse_roi(&record, 3, "roi_a").map_err(|r| row_error(line, r))?;
        let roi_b = parse_roi(&record, 7, "roi_b").map_err(|r| row_error(line, r))?;
        if let (Some(a), Some(b)) = (&roi_a, &roi_b) {
            if (a.w, a.h) != (b.w, b.h) {
                return Err(row_error(
                    line,
                    format!("ROI sizes differ: {}x{} vs {}x{}", a.w, a.h, b.w, b.h),
                ));
            }
        }
        rows.push(ManifestRow {
            pair_id,
            path_a: resolve(&record[1]),
            path_b: resolve(&record[2]),
            roi_a,
            roi_b,
        });
    }
    if rows.is_empty() {
        return Err(row_error(1, "manifest contains no data rows".into()));
    }
    Ok(rows)
}

fn parse_roi(
    record: &csv::StringRecord,
    start: usize,
    name: &str,
) -> std::result::Result<Option<RoiRect>, String> {
    let cells: Vec<&str> = (start..start + 4).map(|i| &record[i]).collect();
    if cells.iter().all(|c| c.is_empty()) {
        return Ok(None);
    }
    if cells.iter().any(|c| c.is_empty()) {
        return Err(format!(
            "{name} columns must be all empty or all set, got `{}`",
            cells.join(",")
        ));
    }
    let mut nums = [0usize; 4];
    for (i, c) in cells.iter().enumerate() {
        nums[i] = c
            .parse::<usize>()
            .map_err(|_| format!("{name} value `{c}` is not a non-negative integer"))?;
    }
    Ok(Some(RoiRect {
        x: nums[0],
        y: nums[1],
        w: nums[2],
        h: nums[3],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_manifest(content: &str) -> (tempfile::TempDir, PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.csv");
        std::fs::write(&path, content).unwrap();
        (dir, path)
    }

    const GOOD_HEADER: &str =
        "pair_id,path_a,path_b,roi_a_x,roi_a_y,roi_a_w,roi_a_h,roi_b_x,roi_b_y,roi_b_w,roi_b_h\n";

    #[test]
    fn parses_rows_with_and_without_rois() {
        let (dir, path) = write_manifest(&format!(
            "{GOOD_HEADER}p1,a.png,b.png,,,,,,,,\np2,c.png,d.png,10,20,64,48,0,0,64,48\n"
        ));
        let rows = read_manifest(&path).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].pair_id, "p1");
        assert_eq!(rows[0].roi_a, None);
        assert_eq!(rows[0].path_a, dir.path().join("a.png"));
        let roi = rows[1].roi_a.unwrap();
        assert_eq!((roi.x, roi.y, roi.w, roi.h), (10, 20, 64, 48));
        assert_eq!(rows[1].roi_b.unwrap().w, 64);
    }

    #[test]
    fn absolute_paths_pass_through() {
        let (_dir, path) = write_manifest(&format!(
            "{GOOD_HEADER}p1,/data/a.png,/data/b.png,,,,,,,,\n"
        ));
        let rows = read_manifest(&path).unwrap();
        assert_eq!(rows[0].path_a, PathBuf::from("/data/a.png"));
    }

    #[test]
    fn rejects_wrong_header() {
        let (_dir, path) =
            write_manifest("id,path_a,path_b,x,y,w,h,x2,y2,w2,h2\np1,a.png,b.png,,,,,,,,\n");
        match read_manifest(&path) {
            Err(Error::ManifestRow { line: 1, .. }) => {}
            other => panic!("expected header error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_partial_roi_with_line_number() {
        let (_dir, path) = write_manifest(&format!(
            "{GOOD_HEADER}p1,a.png,b.png,,,,,,,,\np2,c.png,d.png,10,20,64,,,,,\n"
        ));
        match read_manifest(&path) {
            Err(Error::ManifestRow { line: 3, reason, .. }) => {
                assert!(reason.contains("roi_a"), "{reason}");
            }
            other => panic!("expected row error on line 3, got {other:?}"),
        }
    }

    #[test]
    fn rejects_mismatched_roi_sizes() {
        let (_dir, path) = write_manifest(&format!(
            "{GOOD_HEADER}p1,a.png,b.png,0,0,64,48,0,0,32,48\n"
        ));
        match read_manifest(&path) {
            Err(Error::ManifestRow { line: 2, reason, .. }) => {
                assert!(reason.contains("64x48"), "{reason}");
            }
            other => panic!("expected size mismatch, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_numeric_roi() {
        let (_dir, path) = write_manifest(&format!(
            "{GOOD_HEADER}p1,a.png,b.png,zero,0,64,48,,,,\n"
        ));
        assert!(matches!(
            read_manifest(&path),
            Err(Error::ManifestRow { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_empty_manifest_and_missing_file() {
        let (_dir, path) = write_manifest(GOOD_HEADER);
        assert!(matches!(
            read_manifest(&path),
            Err(Error::ManifestRow { .. })
        ));
        assert!(matches!(
            read_manifest(Path::new("/nonexistent/m.csv")),
            Err(Error::UnreadableFile { .. })
        ));
    }

    #[test]
    fn rejects_empty_pair_id_and_paths() {
        let (_dir, path) = write_manifest(&format!("{GOOD_HEADER},a.png,b.png,,,,,,,,\n"));
        assert!(matches!(
            read_manifest(&path),
            Err(Error::ManifestRow { line: 2, .. })
        ));
        let (_dir, path) = write_manifest(&format!("{GOOD_HEADER}p1,,b.png,,,,,,,,\n"));
        assert!(matches!(
            read_manifest(&path),
            Err(Error::ManifestRow { line: 2, .. })
        ));
    }
}
