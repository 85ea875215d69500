//! Sequence files: one line of `+`/`-` (or `1`/`0`), optional trailing newline.

use std::fs;
use std::path::Path;

use lbs_core::BinarySequence;

use crate::{LbsError, Result};

pub fn read_sequence(path: impl AsRef<Path>) -> Result<BinarySequence> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LbsError::io(path, e))?;
    text.parse().map_err(|source| LbsError::Sequence { path: path.to_path_buf(), source })
}

pub fn write_sequence(path: impl AsRef<Path>, seq: &BinarySequence) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format!("{seq}\n")).map_err(|e| LbsError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seq.txt");
        let seq: BinarySequence = "++-+-".parse().unwrap();
        write_sequence(&path, &seq).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "++-+-\n");
        assert_eq!(read_sequence(&path).unwrap(), seq);

        fs::write(&path, "+?+").unwrap();
        let err = read_sequence(&path).unwrap_err();
        assert!(err.to_string().ends_with("unexpected character '?' at position 2"), "{err}");

        assert!(matches!(read_sequence(dir.path().join("missing")), Err(LbsError::Io { .. })));
    }
}
